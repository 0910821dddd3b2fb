#include "fks/grid.hpp"

#include <stdexcept>
#include <string>

namespace fks {

Grid::Grid(int n, std::optional<int> dealias_cutoff) : n_(n), cutoff_(n / 3) {
    if (n < 8 || n % 2 != 0) {
        throw std::invalid_argument("grid size must be even and >= 8, got " + std::to_string(n));
    }
    if (dealias_cutoff) {
        if (*dealias_cutoff <= 0 || *dealias_cutoff > n / 2) {
            throw std::invalid_argument("dealias cutoff must lie in (0, n/2], got " +
                                        std::to_string(*dealias_cutoff));
        }
        cutoff_ = *dealias_cutoff;
    }
}

} // namespace fks
