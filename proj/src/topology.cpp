#include "frameforge/topology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "frameforge/admissibility.hpp"

namespace frameforge {

namespace {

void require_admissible(const NormSpec& spec, const char* who) {
    const AdmissibilityVerdict v = check_admissible(spec);
    if (!v.admissible) throw std::invalid_argument(std::string(who) + ": spec is not admissible");
}

std::vector<Rational> sorted_descending(const NormSpec& spec) {
    std::vector<Rational> sorted = spec.r;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Rational& a, const Rational& b) { return a > b; });
    return sorted;
}

}  // namespace

int k_ell(const NormSpec& spec, int ell) {
    if (ell < 0 || ell > spec.d - 1)
        throw std::invalid_argument("k_ell: need 0 <= ell <= d-1, got ell=" + std::to_string(ell));
    require_admissible(spec, "k_ell");
    const std::vector<Rational> sorted = sorted_descending(spec);
    Rational partial;
    for (int k = 1; k <= spec.n(); ++k) {
        partial += sorted[static_cast<size_t>(k - 1)];
        if (partial > Rational(ell)) return k;
    }
    // Unreachable for admissible specs: the full sum is d > ell.
    throw std::logic_error("k_ell: no prefix exceeded ell");
}

AnsatzConstant best_ansatz_constant(const NormSpec& spec) {
    if (spec.d < 2) throw std::invalid_argument("best_ansatz_constant: requires d >= 2");
    require_admissible(spec, "best_ansatz_constant");

    AnsatzConstant out;
    out.c_floor = Rational(spec.d) * Rational(spec.d) / (Rational(spec.n()) * Rational(spec.d - 1));
    for (int ell = 1; ell <= spec.d - 1; ++ell) {
        AnsatzConstant::Level level;
        level.ell = ell;
        level.k_ell = k_ell(spec, ell);
        level.ratio = Rational(level.k_ell) * Rational(spec.d) / (Rational(spec.n()) * Rational(ell));
        if (out.per_ell.empty() || level.ratio < out.c_best) out.c_best = level.ratio;
        out.per_ell.push_back(std::move(level));
    }
    return out;
}

long stratum_dimension(int d, int n, int ell, int k) {
    if (ell < 0 || ell > d - 1) throw std::invalid_argument("stratum_dimension: need 0 <= ell <= d-1");
    if (k < 1 || k > n) throw std::invalid_argument("stratum_dimension: need 1 <= k <= n");
    return static_cast<long>(ell) * (d - ell) + static_cast<long>(k) * ell + static_cast<long>(n - k) * d;
}

Rational codimension_bound(const NormSpec& spec, Field field) {
    if (spec.d < 2) throw std::invalid_argument("codimension_bound: requires d >= 2");
    const AnsatzConstant ansatz = best_ansatz_constant(spec);
    const Rational d(spec.d);
    const Rational n(spec.n());
    const Rational generic = (ansatz.c_best * n - d) * Rational(spec.d - 1) / d;
    const Rational bound = std::min(d, generic);
    return field == Field::Complex ? Rational(2) * bound : bound;
}

ConnectivityCertificate certify_connectivity(const NormSpec& spec, Field field, int q) {
    if (q < 0) throw std::invalid_argument("certify_connectivity: q must be non-negative");
    require_admissible(spec, "certify_connectivity");

    ConnectivityCertificate cert;
    cert.field = field;
    cert.q = q;

    if (spec.d < 2) {
        // One ambient dimension: complex phase circles keep the frame space
        // path-connected, but real sign choices do not, and no higher
        // connectivity is available either way.
        if (field == Field::Complex && q == 0) {
            cert.certified = true;
            cert.reason = "trivial ambient dimension";
        } else {
            cert.certified = false;
            cert.reason = "conditions unavailable for d = 1 (requires d >= 2)";
        }
        return cert;
    }

    const AnsatzConstant ansatz = best_ansatz_constant(spec);
    cert.c_used = ansatz.c_best;
    const Rational d(spec.d);
    const Rational n(spec.n());
    if (field == Field::Real) {
        cert.condition_c = (d / n) * Rational(q + spec.d + 1) / Rational(spec.d - 1);
        cert.condition_d = Rational(q + 2);
    } else {
        cert.condition_c = (d / (Rational(2) * n)) * Rational(q + spec.d) / Rational(spec.d - 1);
        cert.condition_d = Rational(q + 2, 2);
    }
    const bool c_ok = cert.c_used >= cert.condition_c;
    const bool d_ok = d >= cert.condition_d;
    cert.certified = c_ok && d_ok;
    if (cert.certified) {
        cert.reason = "sufficient conditions met";
    } else {
        std::ostringstream why;
        why << "condition not met:";
        if (!c_ok) why << " c_best " << cert.c_used << " < required " << cert.condition_c;
        if (!d_ok) why << " d " << spec.d << " < required " << cert.condition_d;
        why << "; not certified does not assert disconnectedness";
        cert.reason = why.str();
    }
    return cert;
}

NeighborhoodCertificate certify_neighborhood_connectivity(const NormSpec& spec) {
    if (spec.d < 2) throw std::invalid_argument("certify_neighborhood_connectivity: requires d >= 2");
    require_admissible(spec, "certify_neighborhood_connectivity");

    NeighborhoodCertificate cert;
    const Rational d(spec.d);
    const Rational n(spec.n());
    cert.condition_c = (d / n) * (Rational(2) * d / Rational(spec.d - 1));
    // Equal-norm specs get the classical constant c = 1 (always valid for
    // them); general specs get the best available constant.
    cert.c_used = spec.is_equal_norm() ? Rational(1) : best_ansatz_constant(spec).c_best;
    cert.certified = cert.c_used >= cert.condition_c;
    if (cert.certified) {
        cert.reason =
            "every admissible spec in some epsilon-neighborhood yields a path-connected real frame space "
            "(epsilon exists, not computed)";
    } else {
        std::ostringstream why;
        why << "condition not met: c " << cert.c_used << " < required " << cert.condition_c
            << "; not certified does not assert disconnectedness";
        cert.reason = why.str();
    }
    return cert;
}

int min_n_for_q_connected(int d, Field field, int q) {
    if (q < 0) throw std::invalid_argument("min_n_for_q_connected: q must be non-negative");
    if (field == Field::Real && d < q + 2)
        throw std::invalid_argument("min_n_for_q_connected: real field requires d >= q+2, got d=" +
                                    std::to_string(d) + ", q=" + std::to_string(q));
    if (field == Field::Complex && 2 * d < q + 2)
        throw std::invalid_argument("min_n_for_q_connected: complex field requires d >= (q+2)/2, got d=" +
                                    std::to_string(d) + ", q=" + std::to_string(q));
    constexpr int kScanCap = 1000000;
    for (int n = d; n <= kScanCap; ++n) {
        if (certify_connectivity(NormSpec::equal_norm(d, n), field, q).certified) return n;
    }
    throw std::logic_error("min_n_for_q_connected: no certified n found below scan cap");
}

}  // namespace frameforge
