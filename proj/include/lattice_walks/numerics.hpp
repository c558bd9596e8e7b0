#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace lattice_walks {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Streaming log-sum-exp accumulator.  add(x) folds one term exp(x) into the
// running sum without ever leaving the log domain, so quadratically growing
// exponents never overflow.
class LogSumAccumulator {
public:
    void add(double log_term) {
        if (log_term == kNegInf) return;
        if (max_ == kNegInf) {
            max_ = log_term;
            sum_ = 1.0;
        } else if (log_term <= max_) {
            sum_ += std::exp(log_term - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        }
    }

    // log(sum of all added exp-terms); -inf when empty.
    double log_value() const {
        if (max_ == kNegInf) return kNegInf;
        return max_ + std::log(sum_);
    }

    // Linear value; may saturate to +inf, which is the honest answer.
    double value() const { return std::exp(log_value()); }

    bool empty() const { return max_ == kNegInf; }

private:
    double max_ = kNegInf;
    double sum_ = 0.0;
};

inline double log_sum_exp(const std::vector<double>& log_terms) {
    LogSumAccumulator acc;
    for (double t : log_terms) acc.add(t);
    return acc.log_value();
}

// Number of lattice points in {xi in Z_+^n : S(xi) <= L} = C(L+n, n),
// clamped to `cap_sentinel` on overflow so callers can test the cap cheaply.
inline std::uint64_t states_up_to_level(int n, std::int64_t level,
                                        std::uint64_t cap_sentinel = UINT64_MAX) {
    // C(level + n, n) via incremental multiply/divide; exact in integers.
    unsigned __int128 c = 1;
    for (int k = 1; k <= n; ++k) {
        c = c * static_cast<unsigned __int128>(level + k);
        c /= static_cast<unsigned __int128>(k);
        if (c > cap_sentinel) return cap_sentinel;
    }
    return static_cast<std::uint64_t>(c);
}

// Relative gap between two log-domain quantities: for a = log x, b = log y,
// returns |x - y| / max(x, y) computed without leaving the log domain.
inline double relative_gap_from_logs(double log_a, double log_b) {
    if (log_a == log_b) return 0.0;
    if (log_a == kNegInf || log_b == kNegInf) return 1.0;
    return -std::expm1(-std::abs(log_a - log_b));
}

} // namespace lattice_walks
