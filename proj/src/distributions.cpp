#include "urnlab/distributions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace urnlab {

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("DiscreteDist: empty support");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    Rational total = 0;
    uint64_t prev = 0;
    for (const Atom& a : atoms_) {
        if (a.value < 1) throw std::invalid_argument("DiscreteDist: values must be >= 1");
        if (a.value == prev && prev != 0)
            throw std::invalid_argument("DiscreteDist: duplicate value in support");
        if (a.prob <= 0 || a.prob > 1)
            throw std::invalid_argument("DiscreteDist: probabilities must lie in (0,1]");
        total += a.prob;
        prev = a.value;
    }
    if (total != 1) throw std::invalid_argument("DiscreteDist: probabilities must sum to 1");

    cdf_.reserve(atoms_.size());
    Rational acc = 0;
    for (const Atom& a : atoms_) {
        acc += a.prob;
        cdf_.push_back(to_double(acc));
    }
    cdf_.back() = 1.0;
}

DiscreteDist DiscreteDist::point(uint64_t value) {
    return DiscreteDist({Atom{value, Rational(1)}});
}

DiscreteDist DiscreteDist::uniform(std::initializer_list<uint64_t> values) {
    std::vector<Atom> atoms;
    const Rational p(1, static_cast<unsigned>(values.size()));
    for (uint64_t v : values) atoms.push_back({v, p});
    return DiscreteDist(std::move(atoms));
}

uint64_t DiscreteDist::sample(RngStream& rng) const {
    const double u = rng.next_double();
    for (size_t i = 0; i < cdf_.size(); ++i)
        if (u < cdf_[i]) return atoms_[i].value;
    return atoms_.back().value;
}

std::string DiscreteDist::describe() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (i) os << ", ";
        os << atoms_[i].value << ": " << atoms_[i].prob;
    }
    os << "}";
    return os.str();
}

MomentSet moments(const DiscreteDist& d) {
    Rational mean = 0, second = 0;
    for (const auto& a : d.atoms()) {
        const Rational v(a.value);
        mean += v * a.prob;
        second += v * v * a.prob;
    }
    return MomentSet{mean, second - mean * mean, second};
}

Rational cross_sq_diff(const DiscreteDist& dx, const DiscreteDist& dy) {
    const MomentSet mx = moments(dx);
    const MomentSet my = moments(dy);
    return mx.second_moment + my.second_moment - 2 * mx.mean * my.mean;
}

}  // namespace urnlab
