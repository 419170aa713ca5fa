#include "bfmix/variational.hpp"

#include <cmath>
#include <numbers>

#include "bfmix/errors.hpp"

namespace bfmix {

namespace {

template <class C>
C lift(const Rational& r)
{
    return CoeffOps<C>::lift(r);
}

template <class C>
Series<C> from_exact(const ExactSeries& s)
{
    if constexpr (std::is_same_v<C, Rational>)
        return s;
    else
        return to_float(s);
}

template <class C>
Series<C> constant(const Rational& r)
{
    return Series<C>::constant(lift<C>(r));
}

// Resonance tests: exact zero in exact mode, a small threshold in float mode.
template <class C>
bool negligible(const C& x, double scale = 1.0)
{
    if constexpr (std::is_same_v<C, Rational>) {
        (void)scale;
        return sgn(x) == 0;
    } else {
        return std::abs(x) <= 1e-9 * std::max(1.0, scale);
    }
}

template <class C>
Rational double_pole_coefficient(const Series<C>& q)
{
    const C c = q.coeff(Rational(-2));
    if constexpr (std::is_same_v<C, Rational>) {
        return c;
    } else {
        if (std::abs(c.imag()) > 1e-9 * std::max(1.0, std::abs(c)))
            throw Error(ErrorKind::field_extension_unsupported, "complex indicial coefficient");
        auto r = recognize_rational(c.real());
        if (!r)
            throw Error(ErrorKind::field_extension_unsupported, "indicial coefficient is not a recognizable rational");
        return *r;
    }
}

}

template <class C>
VE1CoefficientsT<C> build_ve1(const ModelParams& p, const EllipticData& e, int order)
{
    for (const auto& c : p.cj_sq)
        if (sgn(c) != 0)
            throw Error(ErrorKind::invalid_parameter, "VE1 along the elliptic solution needs Cj = 0");
    if (order < 4)
        throw Error(ErrorKind::insufficient_order, "order must be at least 4");
    VE1CoefficientsT<C> out;
    out.qbar_sq = from_exact<C>(wp_laurent(e, order)) + constant<C>(Rational(2, 3) * p.omega0);
    out.qbar = out.qbar_sq.sqrt(order);
    out.tangential = constant<C>(Rational(-2) * p.omega0) + out.qbar_sq * lift<C>(Rational(6));
    if (sgn(p.c0_sq) != 0)
        out.tangential -= (out.qbar_sq * out.qbar_sq).inverse(order) * lift<C>(Rational(3) * p.c0_sq);
    for (const auto& w : p.omegas)
        out.normal.push_back(constant<C>(Rational(-2) * w) + out.qbar_sq * lift<C>(Rational(2) * p.g_bf));
    return out;
}

template <class C>
FrobeniusBasisT<C> frobenius(const Series<C>& q, int order)
{
    if (auto v = q.valuation(); v && *v < -2)
        throw Error(ErrorKind::irregular_singularity, "pole of order " + to_string(Rational(-*v)) + " > 2 at t = 0");
    const Rational q0 = double_pole_coefficient(q);
    const auto s = rational_sqrt(1 + 4 * q0);
    if (!s)
        throw Error(ErrorKind::field_extension_unsupported, "indicial exponents are irrational (1 + 4 q0 = "
                                                               + to_string(Rational(1 + 4 * q0)) + ")");
    if (sgn(*s) == 0)
        throw Error(ErrorKind::log_in_basis, "double indicial root, second solution has a logarithm");

    FrobeniusBasisT<C> b;
    b.rho_high = (1 + *s) / 2;
    b.rho_low = (1 - *s) / 2;

    const int d = q.ramification();
    long known = static_cast<long>(order) * d;
    if (auto tr = q.truncation())
        known = std::min(known, Rational((*tr + 2) * d).get_num().get_si());
    if (known < 1)
        throw Error(ErrorKind::insufficient_order, "coefficient series too short for a Frobenius expansion");

    std::vector<C> qm(static_cast<size_t>(known));
    for (long m = 1; m < known; ++m)
        qm[m] = q.coeff(Rational(-2) + Rational(m, d));
    const C q0c = lift<C>(q0);

    auto solve = [&](const Rational& rho, bool& log) {
        std::vector<C> a(static_cast<size_t>(known));
        a[0] = lift<C>(Rational(1));
        std::vector<typename Series<C>::Term> terms;
        terms.emplace_back(rho, a[0]);
        for (long k = 1; k < known; ++k) {
            const Rational e = rho + Rational(k, d);
            const C f = lift<C>(Rational(e * (e - 1))) - q0c;
            C rhs{};
            for (long m = 1; m <= k; ++m)
                if (!CoeffOps<C>::is_zero(qm[m]))
                    rhs += qm[m] * a[k - m];
            if (negligible(f)) {
                if (!negligible(rhs))
                    log = true;
                a[k] = C{};
            } else {
                a[k] = rhs / f;
            }
            terms.emplace_back(e, a[k]);
        }
        return Series<C>::from_terms(terms, Rational(rho + Rational(known, d)));
    };
    bool log = false;
    b.sol1 = solve(b.rho_low, log);
    b.sol2 = solve(b.rho_high, log);
    b.sol2 *= lift<C>(Rational(1) / *s);
    b.log_in_basis = log;
    b.wronskian_normalized = true;
    return b;
}

template <class C>
VariationResultT<C> variation_of_constants(const FrobeniusBasisT<C>& basis, const Series<C>& forcing)
{
    VariationResultT<C> r;
    r.mu_first = -(basis.sol2 * forcing);
    r.mu_second = basis.sol1 * forcing;
    r.residue_first = r.mu_first.residue();
    r.residue_second = r.mu_second.residue();
    if constexpr (!std::is_same_v<C, Rational>) {
        // Round-off residues count as zero relative to the size of mu.
        auto snap = [](C& res, const Series<C>& mu) {
            double scale = 0;
            for (const auto& [e, c] : mu.terms())
                scale = std::max(scale, std::abs(c));
            if (negligible(res, scale))
                res = C{};
        };
        snap(r.residue_first, r.mu_first);
        snap(r.residue_second, r.mu_second);
    }
    const auto c1 = r.mu_first.antiderivative();
    const auto c2 = r.mu_second.antiderivative();
    r.particular = basis.sol1 * c1.regular + basis.sol2 * c2.regular;
    return r;
}

template <class C>
std::vector<Series<C>> forcing_terms(const ModelParams& p, const Series<C>& qbar, int k,
                                     const std::vector<Series<C>>& first, const std::vector<Series<C>>* second)
{
    if (k != 2 && k != 3)
        throw Error(ErrorKind::invalid_parameter, "forcing is defined for k = 2 and k = 3");
    if (first.size() != p.omegas.size() + 1)
        throw Error(ErrorKind::missing_prerequisite, "one first-order solution per degree of freedom is required");
    if (k == 3 && (!second || second->size() != first.size()))
        throw Error(ErrorKind::missing_prerequisite, "VE3 forcing needs the VE2 solutions");
    const C g = lift<C>(p.g_bf);
    const bool has_c0 = sgn(p.c0_sq) != 0;
    const Series<C> qinv = has_c0 ? qbar.inverse() : Series<C>();
    const Series<C>& x0 = first[0];
    const size_t n = p.omegas.size();

    std::vector<Series<C>> out(n + 1);
    if (k == 2) {
        Series<C> sum;
        for (size_t j = 1; j <= n; ++j)
            sum += first[j] * first[j];
        const Series<C> x0_sq = x0 * x0;
        out[0] = qbar * sum * (lift<C>(Rational(2)) * g) + qbar * x0_sq * lift<C>(Rational(6));
        if (has_c0)
            out[0] += x0_sq * qinv.pow(5) * lift<C>(Rational(6) * p.c0_sq);
        for (size_t j = 1; j <= n; ++j)
            out[j] = qbar * x0 * first[j] * (lift<C>(Rational(4)) * g);
        return out;
    }

    const std::vector<Series<C>>& y = *second;
    const Series<C>& y0 = y[0];
    Series<C> sum_sq, sum_xy;
    for (size_t j = 1; j <= n; ++j) {
        sum_sq += first[j] * first[j];
        sum_xy += first[j] * y[j];
    }
    const Series<C> x0_cu = x0 * x0 * x0;
    const Series<C> qx0y0 = qbar * x0 * y0;
    out[0] = (qbar * sum_xy * lift<C>(Rational(2)) + x0 * sum_sq) * (lift<C>(Rational(2)) * g)
             + x0_cu * lift<C>(Rational(2)) + qx0y0 * lift<C>(Rational(12));
    if (has_c0)
        out[0] -= qinv.pow(6) * (x0_cu * lift<C>(Rational(10)) - qx0y0 * lift<C>(Rational(12)))
                  * lift<C>(p.c0_sq);
    for (size_t j = 1; j <= n; ++j)
        out[j] = (x0 * x0 * first[j] + qbar * (x0 * y[j] + y0 * first[j]) * lift<C>(Rational(2)))
                 * (lift<C>(Rational(2)) * g);
    return out;
}

template <class C>
Case2Expansion<C>::Case2Expansion(const ModelParams& p, const EllipticData& e, int order)
    : p_(p), order_(order), ve1_(build_ve1<C>(p, e, order)), tangential_(frobenius(ve1_.tangential, order))
{
    for (const auto& q : ve1_.normal)
        normal_.push_back(frobenius(q, order));
}

template <class C>
HigherVEResultT<C> Case2Expansion<C>::solve(const HigherVEChoice& choice) const
{
    HigherVEResultT<C> r;
    r.choice = choice;
    r.xi1.push_back(tangential_.pick(choice.xi0));
    for (const auto& b : normal_)
        r.xi1.push_back(b.pick(choice.xij));
    r.k2 = forcing_terms(p_, ve1_.qbar, 2, r.xi1);
    r.ve2.push_back(variation_of_constants(tangential_, r.k2[0]));
    for (size_t j = 0; j < normal_.size(); ++j)
        r.ve2.push_back(variation_of_constants(normal_[j], r.k2[j + 1]));
    for (const auto& v : r.ve2)
        r.ve2_log = r.ve2_log || v.has_log();
    if (choice.order < 3 || r.ve2_log)
        return r;

    r.xi2.push_back(r.ve2[0].particular + tangential_.pick(choice.xi0_2));
    for (size_t j = 0; j < normal_.size(); ++j)
        r.xi2.push_back(r.ve2[j + 1].particular + normal_[j].pick(choice.xij_2));
    r.k3 = forcing_terms(p_, ve1_.qbar, 3, r.xi1, &r.xi2);
    r.ve3.push_back(variation_of_constants(tangential_, r.k3[0]));
    for (size_t j = 0; j < normal_.size(); ++j)
        r.ve3.push_back(variation_of_constants(normal_[j], r.k3[j + 1]));
    return r;
}

template struct VE1CoefficientsT<Rational>;
template class Case2Expansion<Rational>;
template class Case2Expansion<Complex>;
template VE1CoefficientsT<Rational> build_ve1<Rational>(const ModelParams&, const EllipticData&, int);
template VE1CoefficientsT<Complex> build_ve1<Complex>(const ModelParams&, const EllipticData&, int);
template FrobeniusBasisT<Rational> frobenius<Rational>(const ExactSeries&, int);
template FrobeniusBasisT<Complex> frobenius<Complex>(const FloatSeries&, int);
template VariationResultT<Rational> variation_of_constants<Rational>(const FrobeniusBasisT<Rational>&, const ExactSeries&);
template VariationResultT<Complex> variation_of_constants<Complex>(const FrobeniusBasisT<Complex>&, const FloatSeries&);
template std::vector<ExactSeries> forcing_terms<Rational>(const ModelParams&, const ExactSeries&, int,
                                                          const std::vector<ExactSeries>&,
                                                          const std::vector<ExactSeries>*);
template std::vector<FloatSeries> forcing_terms<Complex>(const ModelParams&, const FloatSeries&, int,
                                                         const std::vector<FloatSeries>&,
                                                         const std::vector<FloatSeries>*);

std::optional<HigherVEChoice> reference_choice(const Rational& n, const Rational& offset)
{
    using P = Pick;
    if (n == 1)
        return HigherVEChoice{3, P::second, P::first, P::second, P::first, Row::first};
    if (n == 2 && sgn(offset) != 0)
        return HigherVEChoice{2, P::first, P::first, P::first, P::first, Row::second};
    if (n == 2)
        return HigherVEChoice{3, P::first, P::second, P::second, P::second, Row::second};
    if (n == Rational(1, 2))
        return HigherVEChoice{3, P::first, P::second, P::second, P::first, Row::first};
    if (n == Rational(5, 2))
        return HigherVEChoice{3, P::first, P::first, P::second, P::second, Row::first};
    return std::nullopt;
}

std::string component_name(size_t index)
{
    return index == 0 ? std::string("tangential") : "normal[" + std::to_string(index) + "]";
}

namespace {

std::vector<ResidueRecord> residue_table(const HigherVEResult& r)
{
    std::vector<ResidueRecord> out;
    auto add = [&](int order, const std::vector<VariationResult>& ve) {
        for (size_t i = 0; i < ve.size(); ++i)
            for (Row row : {Row::first, Row::second})
                out.push_back({r.choice, order, component_name(i), row, ve[i].residue(row)});
    };
    add(2, r.ve2);
    add(3, r.ve3);
    return out;
}

// Nonzero residue, preferring the choice's own row on normal[1], then
// normal modes, then the tangential block.
std::optional<ResidueWitness> find_witness(const HigherVEResult& r)
{
    auto scan = [&](int order, const std::vector<VariationResult>& ve) -> std::optional<ResidueWitness> {
        if (ve.size() < 2)
            return std::nullopt;
        const Row other = r.choice.row == Row::first ? Row::second : Row::first;
        std::vector<std::pair<size_t, Row>> probes;
        for (size_t i = 1; i < ve.size(); ++i)
            probes.emplace_back(i, r.choice.row);
        for (size_t i = 1; i < ve.size(); ++i)
            probes.emplace_back(i, other);
        probes.emplace_back(0, r.choice.row);
        probes.emplace_back(0, other);
        for (const auto& [i, row] : probes)
            if (sgn(ve[i].residue(row)) != 0)
                return ResidueWitness{order, ve[i].residue(row), r.choice, component_name(i), row};
        return std::nullopt;
    };
    if (auto w = scan(2, r.ve2))
        return w;
    return scan(3, r.ve3);
}

std::vector<HigherVEChoice> all_choices(const HigherVEChoice& first)
{
    std::vector<HigherVEChoice> out{first};
    for (Pick a : {Pick::first, Pick::second})
        for (Pick b : {Pick::first, Pick::second})
            for (Pick c : {Pick::first, Pick::second})
                for (Pick d : {Pick::first, Pick::second}) {
                    HigherVEChoice ch{3, a, b, c, d, first.row};
                    if (!(ch == first))
                        out.push_back(ch);
                }
    return out;
}

}

Case2Analysis analyze_case2(const ModelParams& p, const EllipticData& e, int order)
{
    p.validate();
    for (const auto& c : p.cj_sq)
        if (sgn(c) != 0)
            throw Error(ErrorKind::invalid_parameter, "case 2 needs Cj = 0 for every mode");
    if (sgn(p.c0_sq) == 0)
        throw Error(ErrorKind::invalid_parameter, "case 2 needs C0 != 0");
    if (e.omega0 != p.omega0 || e.c0_sq != p.c0_sq)
        throw Error(ErrorKind::invalid_parameter, "elliptic data was built for different parameters");

    Case2Analysis a;
    a.verdict.case_id = CaseId::case2;
    a.verdict.parameters = p;
    if (sgn(p.g_bf) == 0) {
        a.verdict.outcome = Outcome::separable;
        a.verdict.notes.push_back("g_BF = 0: the Hamiltonian separates");
        return a;
    }
    const auto n = lame_index(p.g_bf);
    if (!n) {
        a.verdict.outcome = Outcome::non_integrable;
        a.verdict.witness = LameMonodromyWitness{p.g_bf};
        a.verdict.notes.push_back("2 g_BF is not n(n+1) for an admissible n: the Lame monodromy group is not abelian");
        return a;
    }
    a.lame = lame_data(p);
    for (size_t j = 0; j < p.omegas.size(); ++j)
        a.theorem5.push_back(theorem5_for_model(p, j));
    for (size_t j = 0; j < a.theorem5.size(); ++j) {
        const auto& t5 = a.theorem5[j];
        a.verdict.conjecture_conditional = a.verdict.conjecture_conditional || t5.conjecture_conditional;
        if (t5.passed_case == Theorem5Case::none) {
            a.verdict.outcome = Outcome::non_integrable;
            a.verdict.witness = Theorem5Witness{j + 1, t5.failed_conditions};
            a.verdict.notes.push_back("VE1 necessary conditions fail for mode " + std::to_string(j + 1));
            return a;
        }
    }

    // Surviving index; the higher-VE analysis needs one shared offset class.
    bool offsets_zero = true;
    for (const auto& b : a.lame->offsets)
        offsets_zero = offsets_zero && sgn(b) == 0;
    a.reference = reference_choice(*n, offsets_zero ? Rational(0) : Rational(1));
    if (!a.reference) {
        a.verdict.outcome = Outcome::unsupported;
        a.verdict.notes.push_back("higher variational equations are not implemented for n = " + to_string(*n));
        return a;
    }

    const Case2Expansion<Rational> ex(p, e, order);
    if (ex.tangential().log_in_basis)
        throw Error(ErrorKind::verification_failed, "tangential VE1 basis has a logarithm");
    for (size_t j = 0; j < ex.modes(); ++j)
        if (ex.normal(j).log_in_basis)
            throw Error(ErrorKind::verification_failed, "normal VE1 basis has a logarithm");

    HigherVEChoice ref = *a.reference;
    HigherVEResult first = ex.solve(ref);
    if (ref.order == 2 && !first.ve2_log) {
        // No VE2 obstruction: continue to VE3 with the same picks.
        HigherVEChoice deeper = ref;
        deeper.order = 3;
        first = ex.solve(deeper);
    }
    a.reference_residues = residue_table(first);
    a.choices_tried = 1;
    std::optional<ResidueWitness> w = find_witness(first);
    if (!w) {
        HigherVEChoice start = ref;
        start.order = 3;
        for (const auto& ch : all_choices(start)) {
            if (ch == start)
                continue;
            ++a.choices_tried;
            w = find_witness(ex.solve(ch));
            if (w)
                break;
        }
        if (w)
            a.verdict.notes.push_back("reference solution choice gives zero residues; witness found with another choice");
    }
    if (w) {
        a.verdict.outcome = Outcome::non_integrable;
        a.verdict.witness = *w;
        a.verdict.notes.push_back("logarithmic term in VE" + std::to_string(w->order));
    } else {
        a.verdict.outcome = Outcome::necessary_conditions_survived;
        a.verdict.notes.push_back("no residue obstruction at t = 0 up to VE3 for any basis choice");
    }
    return a;
}

Complex contour_residue(const FloatSeries& mu, double radius, int points)
{
    Complex sum = 0.0;
    for (int k = 0; k < points; ++k) {
        const double th = 2 * std::numbers::pi * (k + 0.5) / points;
        const Complex t = std::polar(radius, th);
        sum += mu.evaluate(t) * t;
    }
    return sum / static_cast<double>(points);
}

}
