#include "psimr/asymptotics.hpp"

#include <algorithm>
#include <stdexcept>

namespace psimr {

MultiplicityProfile MultiplicityProfile::from_dfix(int n, const std::vector<long>& dfix) {
    if (static_cast<int>(dfix.size()) != n - 1)
        throw std::invalid_argument("MultiplicityProfile: dfix must have n-1 entries");
    MultiplicityProfile prof;
    prof.n = n;
    prof.p.assign(4, 0);
    for (long d : dfix) {
        if (d < 0) throw std::invalid_argument("MultiplicityProfile: negative exponent");
        prof.dsum += d;
        if (d < static_cast<long>(prof.p.size())) ++prof.p[d];
    }
    return prof;
}

std::vector<std::pair<long, long>> RationalFunctionInG::denominator_factors() const {
    std::vector<std::pair<long, long>> out;
    for (long l = 1; l <= dsum; ++l) out.emplace_back(6, 2 * n - 3 - 2 * l);
    return out;
}

Rational RationalFunctionInG::denominator_eval(const Rational& g) const {
    Rational acc(1);
    for (long l = 1; l <= dsum; ++l) acc *= Rational(6) * g + Rational(2 * n - 3 - 2 * l);
    return acc;
}

Rational RationalFunctionInG::eval(const Rational& g) const {
    Rational den = denominator_eval(g);
    if (den == 0) throw std::domain_error("RationalFunctionInG::eval: pole");
    return numerator.eval(g) / den;
}

namespace {

long first_admissible_genus(int n, long dsum) {
    long g = 0;
    while (2 * g - 2 + n <= 0 || 3 * g - 3 + n - dsum < 0) ++g;
    return g;
}

Rational engine_g_value(const Engine& engine, int n, const std::vector<long>& dfix, long g,
                        long dsum) {
    std::vector<long> ds = dfix;
    ds.push_back(3 * g - 3 + n - dsum);
    return engine.normalized_g(MultiIndex(ds));
}

}  // namespace

RationalFunctionInG reconstruct(const Engine& engine, int n, const std::vector<long>& dfix) {
    if (n < 1) throw std::invalid_argument("reconstruct: need n >= 1");
    if (static_cast<int>(dfix.size()) != n - 1)
        throw std::invalid_argument("reconstruct: dfix must have n-1 entries");
    for (long d : dfix)
        if (d < 0) throw std::invalid_argument("reconstruct: negative exponent");
    RationalFunctionInG rf;
    rf.n = n;
    rf.dfix = dfix;
    for (long d : dfix) rf.dsum += d;

    long g0 = first_admissible_genus(n, rf.dsum);
    std::vector<std::pair<Rational, Rational>> points;  // (g, P(g))
    for (long g = g0; g < g0 + rf.dsum + 4; ++g) {
        Rational G = engine_g_value(engine, n, dfix, g, rf.dsum);
        Rational P = G;
        for (long l = 1; l <= rf.dsum; ++l) P *= Rational(6 * g + 2 * n - 3 - 2 * l);
        points.emplace_back(Rational(g), P);
    }
    std::vector<std::pair<Rational, Rational>> base(points.begin(), points.begin() + rf.dsum + 1);
    rf.numerator = Polynomial::interpolate(base);
    for (size_t i = rf.dsum + 1; i < points.size(); ++i) {
        if (rf.numerator.eval(points[i].first) != points[i].second)
            throw std::logic_error("reconstruct: verification genus disagrees with interpolant");
    }
    return rf;
}

TheoremBChecks theorem_b_checks(const RationalFunctionInG& rf) {
    TheoremBChecks out;
    const Polynomial& P = rf.numerator;
    out.degree = P.degree() == static_cast<int>(rf.dsum);
    out.leading = P.coeff(static_cast<int>(rf.dsum)) == Rational(pow_integer(6, rf.dsum));
    Rational constant(1);
    for (long l = 1; l <= rf.dsum; ++l) constant *= Rational(rf.n - l - 2);
    for (long d : rf.dfix) constant *= ratio(double_factorial(2 * d + 1), factorial(d));
    out.constant = P.coeff(0) == constant;
    out.integer_values = true;
    for (long g = -3; g <= 10; ++g) {
        Rational v = P.eval(Rational(g));
        if (v.get_den() != 1) {
            out.integer_values = false;
            break;
        }
    }
    out.scaled_integer_coeffs = true;
    Integer scale = pow_integer(2, rf.dsum / 3);
    for (int i = 0; i <= P.degree(); ++i) {
        Rational scaled = P.coeff(i) * Rational(scale);
        if (scaled.get_den() != 1) {
            out.scaled_integer_coeffs = false;
            break;
        }
    }
    return out;
}

SeriesCoefficients series_coeffs(const RationalFunctionInG& rf, int K) {
    if (K < 0) throw std::domain_error("series_coeffs: negative K");
    SeriesCoefficients out;
    long dsum = rf.dsum;
    const Polynomial& P = rf.numerator;
    // C_k = alpha_{|d|-k} / 6^{|d|}
    Rational six_pow(pow_integer(6, dsum));
    for (int k = 0; k <= K; ++k) out.C.push_back(P.coeff(static_cast<int>(dsum) - k) / six_pow);

    // Route 1: G_k = sum_l (-1)^l/6^{|d|+l} alpha_{|d|+l-k} h_l(x_1..x_{|d|}),
    // x_l = 2n-3-2l, h_l the complete homogeneous symmetric polynomials.
    std::vector<Rational> h(K + 1, Rational(0));
    h[0] = 1;
    for (long l = 1; l <= dsum; ++l) {
        Rational x(2 * rf.n - 3 - 2 * l);
        for (int t = 1; t <= K; ++t) h[t] += x * h[t - 1];
    }
    for (int k = 0; k <= K; ++k) {
        Rational v(0);
        Rational denom = six_pow;
        for (int l = 0; l <= k; ++l) {
            Rational alpha = P.coeff(static_cast<int>(dsum) + l - k);
            if (alpha != 0) {
                Rational term = alpha * h[l] / denom;
                v += (l % 2 == 0) ? term : -term;
            }
            denom *= 6;
        }
        out.G.push_back(v);
    }

    // Route 2: exact power series division in x = 1/g.
    std::vector<Rational> numx(K + 1, Rational(0));
    for (int t = 0; t <= K; ++t) numx[t] = P.coeff(static_cast<int>(dsum) - t);
    std::vector<Rational> denx{Rational(1)};
    for (long l = 1; l <= dsum; ++l) {
        std::vector<Rational> next(denx.size() + 1, Rational(0));
        for (size_t t = 0; t < denx.size(); ++t) {
            next[t] += denx[t] * 6;
            next[t + 1] += denx[t] * Rational(2 * rf.n - 3 - 2 * l);
        }
        denx = std::move(next);
    }
    std::vector<Rational> division = series_divide(numx, denx, K);
    if (division != out.G)
        throw std::logic_error("series_coeffs: extraction routes disagree");
    return out;
}

Rational gk_closed(int k, const MultiplicityProfile& prof) {
    long n = prof.n;
    long p0 = prof.pget(0), p1 = prof.pget(1), p2 = prof.pget(2), p3 = prof.pget(3);
    switch (k) {
        case 0:
            return Rational(1);
        case 1:
            return make_rational((n - 1) * (n - 6) + (5 - p0) * p0, 12);
        case 2: {
            Rational acc(0);
            acc += make_rational((n - 1) * (3 * n * n * n - 59 * n * n + 298 * n - 228), 864);
            acc += make_rational(p0 * (346 - 390 * n + 30 * n * n), 864);
            acc += make_rational(p0 * p0 * (69 + 78 * n - 6 * n * n) - 46 * p0 * p0 * p0 +
                                3 * p0 * p0 * p0 * p0 -
                                p1 * (204 - 180 * p0 + 36 * p0 * p0) - 60 * p2, 864);
            return acc;
        }
        case 3: {
            long n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
            long q2 = p0 * p0, q3 = q2 * p0, q4 = q3 * p0, q5 = q4 * p0, q6 = q5 * p0;
            Rational acc(0);
            acc += make_rational(n6 - 41 * n5 + 555 * n4 - 3031 * n3 + 6092 * n2 - 5160 * n + 1584, 10368);
            acc += make_rational(-q6 + 31 * q5 + 3 * q4 * (n2 - 19 * n - 73 + 12 * p1), 10368);
            acc -= make_rational(q3 * (46 * n2 - 874 * n + 552 * p1 + 120 * p2 + 127), 10368);
            acc += make_rational(
                q2 * (-3 * n4 + 98 * n3 - 36 * n2 * (p1 + 20) + n * (684 * p1 - 1253)), 10368);
            acc += make_rational(q2 * (-54 * p1 * p1 + 312 * p1 + 285 * p2 + 409), 2592);
            acc += make_rational(p0 * (15 * n4 - 490 * n3 + n2 * (4291 + 180 * p1) -
                                       12 * n * (572 + 285 * p1)),
                                 10368);
            acc += make_rational(p0 * (90 * p1 * p1 + 171 * p1 - 285 * p2 - 70 * p3 + 258), 864);
            acc -= make_rational(102 * p1 * p1 + p1 * (17 * n2 - 323 * n + 60 * p2 + 402) +
                                5 * (n2 * p2 - 19 * n * p2 - 28 * p3), 864);
            return acc;
        }
        default:
            throw std::domain_error("gk_closed: shipped library covers k <= 3");
    }
}

Rational ck_closed(int k, const MultiplicityProfile& prof) {
    long m = prof.n - 1;  // the closed forms count the fixed exponents
    long s = prof.dsum;
    long p0 = prof.pget(0), p1 = prof.pget(1), p2 = prof.pget(2);
    switch (k) {
        case 0:
            return Rational(1);
        case 1:
            return make_rational(-s * s, 6) + make_rational((m - 1) * s, 3) + make_rational(m * m - 5 * m, 12) +
                   make_rational(5 * p0 - p0 * p0, 12);
        case 2: {
            long s2 = s * s, s3 = s2 * s, s4 = s3 * s;
            long m2 = m * m, m3 = m2 * m;
            long q2 = p0 * p0, q3 = q2 * p0, q4 = q3 * p0;
            Rational acc(0);
            acc += make_rational(s4, 72);
            acc -= make_rational((3 * m - 2) * s3, 54);
            acc += make_rational(m * (3 * m + 1) * s2, 72);
            acc += make_rational((6 * m3 - 48 * m2 + 54 * m - 11) * s, 216);
            acc += make_rational(m * (3 * m3 - 50 * m2 + 189 * m + 14), 864);
            acc += make_rational(q2 * (4 * s2 - 8 * m * s + 8 * s - 2 * m2 + 22 * m - 12 * p1 + 47), 288);
            acc += make_rational(q4, 288);
            acc -= make_rational(23 * q3, 432);
            acc -= make_rational(5 * p2, 72);
            acc -= make_rational(17 * p1, 72);
            acc += make_rational(p0 * (-30 * s2 + 60 * m * s - 60 * s + 15 * m2 - 165 * m + 90 * p1 - 7), 432);
            return acc;
        }
        default:
            throw std::domain_error("ck_closed: shipped library covers k <= 2");
    }
}

GkLibraryReport check_gk_library(const Engine& engine, int n, const std::vector<long>& dfix) {
    GkLibraryReport rep;
    rep.profile = MultiplicityProfile::from_dfix(n, dfix);
    RationalFunctionInG rf = reconstruct(engine, n, dfix);
    SeriesCoefficients sc = series_coeffs(rf, 3);
    rep.extracted_G = sc.G;
    rep.extracted_C = {sc.C[0], sc.C[1], sc.C[2]};
    for (int k = 0; k <= 3; ++k) rep.closed_G.push_back(gk_closed(k, rep.profile));
    for (int k = 0; k <= 2; ++k) rep.closed_C.push_back(ck_closed(k, rep.profile));
    rep.g12_ok = rep.extracted_G[1] == rep.closed_G[1] && rep.extracted_G[2] == rep.closed_G[2];
    rep.c12_ok = rep.extracted_C[1] == rep.closed_C[1] && rep.extracted_C[2] == rep.closed_C[2];
    rep.g3_ok = rep.extracted_G[3] == rep.closed_G[3];
    if (!rep.g12_ok)
        throw std::logic_error("check_gk_library: proved coefficient G_1 or G_2 mismatches");
    return rep;
}

namespace {

MultiplicityProfile shifted(const MultiplicityProfile& prof, int dn,
                            std::initializer_list<std::pair<int, long>> deltas) {
    MultiplicityProfile out = prof;
    out.n += dn;
    for (auto [i, delta] : deltas) {
        while (static_cast<int>(out.p.size()) <= i) out.p.push_back(0);
        out.p[i] += delta;
    }
    return out;
}

}  // namespace

RecursionReport check_gk_recursions(int K, const std::vector<MultiplicityProfile>& profiles) {
    if (K > 3) throw std::domain_error("check_gk_recursions: shipped library covers k <= 3");
    RecursionReport rep;
    for (const auto& prof : profiles) {
        long n = prof.n;
        std::vector<RecursionCell> cells;
        for (int k = 0; k <= K; ++k) {
            RecursionCell cell;
            cell.k = k;
            MultiplicityProfile pm1 = shifted(prof, -1, {{1, -1}});   // n-1, p1-1
            MultiplicityProfile q = shifted(prof, -1, {{0, -1}});     // n-1, p0-1
            // dilaton-equation recursion
            Rational lhs = gk_closed(k, prof) - gk_closed(k, pm1);
            Rational rhs(0);
            Rational w = make_rational(1, 6);
            for (int j = 0; j < k; ++j) {
                rhs += Rational(n - 4) * w * gk_closed(k - 1 - j, pm1);
                w *= make_rational(-(2 * n - 5), 6);
            }
            cell.dilaton_residual = lhs - rhs;
            // string-equation recursion
            lhs = gk_closed(k, prof) - gk_closed(k, q);
            rhs = 0;
            w = make_rational(1, 6);
            for (int j = 0; j < k; ++j) {
                rhs += Rational(3 * prof.pget(1)) * w *
                       (gk_closed(k - 1 - j, pm1) - gk_closed(k - 1 - j, q));
                int top = (3 * (k - 1 - j)) / 2;
                for (int i = 2; i <= top; ++i) {
                    MultiplicityProfile qi = shifted(q, 0, {{i - 1, 1}, {i, -1}});
                    rhs += Rational((2 * i + 1) * prof.pget(i)) * w *
                           (gk_closed(k - 1 - j, qi) - gk_closed(k - 1 - j, q));
                }
                rhs += Rational(3 * n - 6 - prof.pget(0)) * w * gk_closed(k - 1 - j, q);
                w *= make_rational(-(2 * n - 5), 6);
            }
            w = make_rational(-(2 * n - 5), 36);
            for (int j = 1; j <= k; ++j) {
                rhs += Rational(6) * w * gk_closed(k - j, q);
                w *= make_rational(-(2 * n - 5), 6);
            }
            cell.string_residual = lhs - rhs;
            if (k <= 2 && (cell.dilaton_residual != 0 || cell.string_residual != 0))
                rep.k12_zero = false;
            if (k == 3 && (cell.dilaton_residual != 0 || cell.string_residual != 0))
                rep.k3_zero = false;
            cells.push_back(std::move(cell));
        }
        rep.rows.emplace_back(prof, std::move(cells));
    }
    return rep;
}

LiuXuValue liu_xu_c(const std::function<Rational(const MultiIndex&)>& correlator,
                    const std::vector<long>& dfix, long g) {
    int n = static_cast<int>(dfix.size()) + 1;
    long dsum = 0;
    for (long d : dfix) {
        if (d < 0) throw std::invalid_argument("liu_xu_c: negative exponent");
        dsum += d;
    }
    long dn = 3 * g - 3 + n - dsum;
    if (g < 0 || dn < 0 || 2 * g - 2 + n <= 0)
        throw std::domain_error("liu_xu_c: (g,n) unstable or last exponent negative");
    std::vector<long> ds = dfix;
    ds.push_back(dn);
    Rational corr = correlator(MultiIndex(ds));
    LiuXuValue out;
    out.P = corr * Rational(pow_integer(24, g) * factorial(g));
    for (long d : dfix) out.P *= Rational(double_factorial(2 * d + 1));
    if (g > 0 || dsum == 0)
        out.C = out.P / pow_rational(Rational(6 * g), dsum);
    return out;
}

}  // namespace psimr
