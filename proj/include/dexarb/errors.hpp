#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dexarb {

/// The arbitrage opportunity is outside the supported range (1, 3].
struct UnsupportedOpportunityError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The break-even gas fee does not exceed the base gas fee: no arbitrageur
/// trades, even one guaranteed to execute first.
struct NoTradeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Evaluation outside the support of the equilibrium gas-fee distribution.
struct OutOfSupportError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A root or threshold crossing could not be bracketed on the stored path.
struct BracketMissingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Regression design matrix is rank deficient; `columns` lists the offenders.
struct SingularDesignError : std::runtime_error {
    SingularDesignError(const std::string& what, std::vector<std::size_t> cols)
        : std::runtime_error(what), columns(std::move(cols)) {}
    std::vector<std::size_t> columns;
};

/// Malformed or inconsistent input data (bad CSV cell, block-number gaps, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dexarb
