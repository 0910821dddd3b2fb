#pragma once

#include <stdexcept>
#include <string>

namespace fks {

/// A time integration could not continue: a step size fell below the
/// configured floor, or a stage produced non-finite values.
class IntegrationAborted : public std::runtime_error {
public:
    explicit IntegrationAborted(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fks
