#include "obsfeat/statistics.hpp"

#include <algorithm>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "obsfeat/error.hpp"

namespace obsfeat {

namespace {

namespace mp = boost::multiprecision;
using Rational = mp::mpq_rational;
using Real = mp::number<mp::mpfr_float_backend<80>, mp::et_off>;

Rational fraction(const TrialAccuracy& t) {
    return Rational(mp::mpz_int(t.correct), mp::mpz_int(t.total));
}

double round_to_double(const Real& x) {
    return mpfr_get_d(x.backend().data(), MPFR_RNDN);
}

double round_to_double(const Rational& q) { return round_to_double(Real(q)); }

}  // namespace

AccuracyStats summarize(std::span<const TrialAccuracy> trials) {
    if (trials.empty()) fail_input("accuracy statistics need at least one trial");
    for (const auto& t : trials)
        if (t.total == 0 || t.correct > t.total) fail_input("trial accuracy must be a fraction in [0, 1]");

    AccuracyStats stats;
    stats.n_trials = trials.size();
    stats.per_trial.assign(trials.begin(), trials.end());

    const Rational n(static_cast<long>(trials.size()));
    Rational sum(0), lo = fraction(trials.front()), hi = lo;
    for (const auto& t : trials) {
        const Rational q = fraction(t);
        sum += q;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        if (t.correct == 0) ++stats.zero_accuracy_trials;
    }
    const Rational mean = sum / n;
    Rational sq(0);
    for (const auto& t : trials) {
        const Rational d = fraction(t) - mean;
        sq += d * d;
    }

    stats.min = round_to_double(lo);
    stats.max = round_to_double(hi);
    stats.arithmetic_mean = round_to_double(mean);
    stats.std = round_to_double(Real(mp::sqrt(Real(sq / n))));

    if (stats.zero_accuracy_trials > 0) {
        stats.geometric_mean = 0.0;
    } else {
        Real log_sum = 0;
        for (const auto& t : trials) log_sum += mp::log(Real(fraction(t)));
        stats.geometric_mean = round_to_double(Real(mp::exp(log_sum / Real(static_cast<long>(trials.size())))));
        // exp(mean log) is inexact even when every trial agrees.
        stats.geometric_mean = std::clamp(stats.geometric_mean, stats.min, stats.arithmetic_mean);
    }
    return stats;
}

}  // namespace obsfeat
