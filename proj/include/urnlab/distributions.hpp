#pragma once

#include "urnlab/rational.hpp"
#include "urnlab/rng.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace urnlab {

/// Exact moments of a finite discrete law. second_moment == variance + mean^2
/// as a rational identity.
struct MomentSet {
    Rational mean;
    Rational variance;
    Rational second_moment;
};

/// Finite-support law on the strictly positive integers with exact rational
/// probabilities. Immutable after construction; atoms sorted by value, no
/// duplicates, probabilities summing exactly to 1. A float CDF is frozen at
/// construction for sampling.
class DiscreteDist {
  public:
    struct Atom {
        uint64_t value;
        Rational prob;
    };

    explicit DiscreteDist(std::vector<Atom> atoms);

    static DiscreteDist point(uint64_t value);
    // equal weight on each listed value
    static DiscreteDist uniform(std::initializer_list<uint64_t> values);

    const std::vector<Atom>& atoms() const { return atoms_; }
    uint64_t min_value() const { return atoms_.front().value; }
    uint64_t max_value() const { return atoms_.back().value; }
    bool is_point() const { return atoms_.size() == 1; }

    // inverse CDF over the sorted atoms, one uniform draw
    uint64_t sample(RngStream& rng) const;

    std::string describe() const;

  private:
    std::vector<Atom> atoms_;
    std::vector<double> cdf_;
};

MomentSet moments(const DiscreteDist& d);

// E[(X - Y)^2] for independent X ~ dx, Y ~ dy.
Rational cross_sq_diff(const DiscreteDist& dx, const DiscreteDist& dy);

}  // namespace urnlab
