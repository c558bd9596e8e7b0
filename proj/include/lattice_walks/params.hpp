#pragma once

#include <cmath>
#include <string>

#include "lattice_walks/errors.hpp"

namespace lattice_walks {

// Interaction parameter beta: a finite real or the hard-core sentinel.  The
// sentinel is a structural variant, never a floating -inf, so the 0*inf = 0
// convention is enforced by the code paths that consume it rather than by
// IEEE arithmetic.
class Beta {
public:
    Beta() = default;
    Beta(double v) : value_(v) {   // NOLINT: implicit by design, beta = -1.5 reads naturally
        if (!std::isfinite(v))
            throw input_error("finite beta required; use Beta::hard_core() for the -inf case");
    }

    static Beta hard_core() {
        Beta b;
        b.hard_core_ = true;
        return b;
    }

    bool is_hard_core() const { return hard_core_; }

    double value() const {
        if (hard_core_) throw model_error("hard-core beta has no finite value");
        return value_;
    }

    // Sign queries honouring the sentinel: hard-core counts as negative.
    bool negative() const { return hard_core_ || value_ < 0.0; }
    bool positive() const { return !hard_core_ && value_ > 0.0; }
    bool zero() const { return !hard_core_ && value_ == 0.0; }

    std::string to_string() const {
        return hard_core_ ? "-inf" : std::to_string(value_);
    }

    bool operator==(const Beta& o) const {
        return hard_core_ == o.hard_core_ && (hard_core_ || value_ == o.value_);
    }

private:
    bool hard_core_ = false;
    double value_ = 0.0;
};

enum class Variant { Standard, Modified };

inline std::string variant_name(Variant v) {
    return v == Variant::Standard ? "standard" : "modified";
}

struct Params {
    double alpha = 0.0;
    Beta beta;
    Variant variant = Variant::Standard;
};

// The modified chain's death rate is exp(-beta * (A xi)_i); beta = -inf would
// make deaths infinitely fast, a dynamics nobody has defined.  Rejected.
inline void check_params(const Params& p) {
    if (!std::isfinite(p.alpha)) throw input_error("alpha must be finite");
    if (p.variant == Variant::Modified && p.beta.is_hard_core())
        throw input_error("the modified variant is undefined for beta = -inf");
}

} // namespace lattice_walks
