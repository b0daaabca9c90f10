#include "frameforge/admissibility.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace frameforge {

AdmissibilityVerdict check_admissible(const NormSpec& spec) {
    AdmissibilityVerdict v;
    v.sum_r = sum(spec.r);

    v.sorted_order.resize(spec.r.size());
    std::iota(v.sorted_order.begin(), v.sorted_order.end(), 0);
    std::stable_sort(v.sorted_order.begin(), v.sorted_order.end(),
                     [&](int a, int b) { return spec.r[static_cast<size_t>(a)] > spec.r[static_cast<size_t>(b)]; });

    Rational partial;
    for (int k = 1; k <= spec.d - 1 && k <= spec.n(); ++k) {
        partial += spec.r[static_cast<size_t>(v.sorted_order[static_cast<size_t>(k - 1)])];
        if (partial > Rational(k)) {
            v.first_violated_k = k;
            v.violated_partial_sum = partial;
            break;
        }
    }

    v.admissible = (v.sum_r == Rational(spec.d)) && !v.first_violated_k.has_value();
    return v;
}

SVector build_s_vector(const NormSpec& spec) {
    for (const auto& ri : spec.r)
        if (!ri.is_positive()) throw std::invalid_argument("build_s_vector: every r_i must be positive");

    mpz_class lcm_den = 1;
    mpz_class gcd_num = 0;
    for (const auto& ri : spec.r) {
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), ri.den().get_mpz_t());
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), ri.num().get_mpz_t());
    }

    SVector out;
    out.S = 1;
    out.s.reserve(spec.r.size());
    for (const auto& ri : spec.r) {
        // (num / gcd{num}) * (lcm{den} / den): both factors exact integers.
        mpz_class si = (ri.num() / gcd_num) * (lcm_den / ri.den());
        out.S *= si;
        out.s.push_back(std::move(si));
    }
    return out;
}

}  // namespace frameforge
