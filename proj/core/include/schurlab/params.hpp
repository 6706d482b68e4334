#pragma once

#include <stdexcept>
#include <string>

namespace schurlab {

/// The pair (d, r) with d >= 3 and 1 <= r < d/2. No gcd reduction is applied.
class SchurParams {
public:
    SchurParams(int d, int r) : d_(d), r_(r) {
        if (d < 3 || r < 1 || 2 * r >= d) {
            throw std::invalid_argument("invalid Schur parameters (d=" + std::to_string(d) + ", r=" +
                                        std::to_string(r) + "): need d >= 3 and 1 <= r < d/2");
        }
    }

    int d() const noexcept { return d_; }
    int r() const noexcept { return r_; }
    int dr() const noexcept { return d_ - r_; }

    /// True for residues 0, r, d-r mod d.
    bool admissible_residue(long part) const noexcept {
        const long m = ((part % d_) + d_) % d_;
        return m == 0 || m == r_ || m == d_ - r_;
    }

    bool operator==(const SchurParams&) const = default;

private:
    int d_;
    int r_;
};

}  // namespace schurlab
