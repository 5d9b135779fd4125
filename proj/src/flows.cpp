#include "pertdef/flows.hpp"

#include <sstream>
#include <stdexcept>

#include "pertdef/serialize.hpp"

namespace pertdef {

namespace {

Rational factorial(int d) {
    Rational f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

// Orderings of a multiset of indices with multiplicities from an exponent
// vector: deg! / prod(e_i!).
Rational orderings(const ExpVec& exps) {
    Rational f = factorial(static_cast<int>(total_degree(exps)));
    for (auto e : exps) f /= factorial(static_cast<int>(e));
    return f;
}

void check_images(const PertRingSpec& spec, const std::vector<PertElem>& images,
                  const std::string& what) {
    if (images.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument(what + ": need one image per generator");
    for (const auto& img : images) {
        if (!(img.spec() == spec)) throw std::invalid_argument(what + ": image spec mismatch");
        if (img.constant_term() != 0)
            throw std::invalid_argument(what + ": image has nonzero constant term");
    }
}

// p with generators replaced by the given images, coefficients untouched.
// Works for any target spec shared by the images.
PertElem substitute(const std::vector<PertElem>& images, const PertElem& p,
                    const PertRingSpec& target) {
    std::vector<std::vector<PertElem>> powers(images.size());
    for (std::size_t a = 0; a < images.size(); ++a)
        powers[a].push_back(PertElem::constant(target, 1));
    auto power = [&](std::size_t a, std::uint32_t e) -> const PertElem& {
        while (powers[a].size() <= e) powers[a].push_back(powers[a].back() * images[a]);
        return powers[a][e];
    };
    PertElem out(target);
    for (const auto& [exps, c] : p.terms()) {
        PertElem term = PertElem::constant(target, c);
        for (std::size_t a = 0; a < exps.size(); ++a)
            if (exps[a] > 0) term = term * power(a, exps[a]);
        out = out + term;
    }
    return out;
}

// a + delta*b with delta^2 = 0, over the target Pert ring.
struct Dual {
    PertElem v;
    PertElem d;
};

Dual dual_mul(const Dual& x, const Dual& y) { return {x.v * y.v, x.v * y.d + y.v * x.d}; }

} // namespace

PertElem apply_endo(const std::vector<PertElem>& images, const PertElem& p) {
    check_images(p.spec(), images, "apply_endo");
    return substitute(images, p, p.spec());
}

EndoFamily::EndoFamily(PertRingSpec spec, std::vector<PertElem> value_at_0,
                       std::vector<PertElem> derivative)
    : spec_(spec), derivative_(std::move(derivative)) {
    if (value_at_0.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("EndoFamily: need one value-at-0 image per generator");
    for (int a = 1; a <= spec.n; ++a)
        if (!(value_at_0[static_cast<std::size_t>(a - 1)] == PertElem::generator(spec, a)))
            throw std::invalid_argument("EndoFamily: g_0 must be the identity substitution");
    check_images(spec_, derivative_, "EndoFamily derivative");
}

EndoFamily EndoFamily::from_tensors(PertRingSpec spec, const std::map<int, TensorMap>& derivative) {
    std::vector<PertElem> images(static_cast<std::size_t>(spec.n), PertElem(spec));
    for (const auto& [order, tensor] : derivative) {
        if (order < 1 || order > spec.k)
            throw std::invalid_argument("EndoFamily: derivative order out of 1..k");
        const std::string name = "gdot order " + std::to_string(order);
        check_tensor_shape(tensor, order, spec.n, name);
        check_tensor_symmetric(tensor, name);
        // Sum over ordered lower tuples: each stored key contributes once.
        for (const auto& [key, value] : tensor) {
            ExpVec exps(static_cast<std::size_t>(spec.n), 0);
            for (std::size_t j = 1; j < key.size(); ++j)
                exps[static_cast<std::size_t>(key[j] - 1)] += 1;
            images[static_cast<std::size_t>(key[0] - 1)].add_term(exps, value);
        }
    }
    std::vector<PertElem> identity;
    for (int a = 1; a <= spec.n; ++a) identity.push_back(PertElem::generator(spec, a));
    return EndoFamily(spec, std::move(identity), std::move(images));
}

bool EndoFamily::is_top_order() const {
    for (const auto& img : derivative_)
        for (const auto& [exps, c] : img.terms())
            if (total_degree(exps) != static_cast<std::uint64_t>(spec_.k)) return false;
    return true;
}

Derivation beta_field(const EndoFamily& fam) { return Derivation{fam.spec(), fam.derivative()}; }

PertElem apply_derivation(const Derivation& beta, const PertElem& p) {
    if (!(p.spec() == beta.spec)) throw std::invalid_argument("apply_derivation: spec mismatch");
    PertElem out(p.spec());
    for (int a = 1; a <= p.spec().n; ++a)
        out = out + partial_derivative(p, a) * beta.images[static_cast<std::size_t>(a - 1)];
    return out;
}

bool Figure::is_canonical() const {
    if (source.n != target.n || source.k != target.k + 1) return false;
    for (int a = 1; a <= target.n; ++a)
        if (!(images[static_cast<std::size_t>(a - 1)] == PertElem::generator(target, a)))
            return false;
    return true;
}

Figure canonical_figure(int n, int k) {
    Figure fig{PertRingSpec(n, k + 1), PertRingSpec(n, k), {}};
    for (int a = 1; a <= n; ++a) fig.images.push_back(PertElem::generator(fig.target, a));
    return fig;
}

PertElem apply_figure(const Figure& fig, const PertElem& p) {
    if (!(p.spec() == fig.source)) throw std::invalid_argument("apply_figure: element not in source ring");
    check_images(fig.target, fig.images, "apply_figure");
    return substitute(fig.images, p, fig.target);
}

TangentModuleElem GammaOperator::apply(const TangentModuleElem& f) const {
    if (!(f.target == target)) throw std::invalid_argument("GammaOperator: target spec mismatch");
    const std::size_t n = entries.size();
    std::vector<PertElem> out(n, PertElem(target));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            out[b] = out[b] + f.coeffs[a] * entries[a][b];
    return TangentModuleElem{target, std::move(out)};
}

TangentModuleElem gamma_generic_apply(const EndoFamily& fam, const Figure& fig,
                                      const TangentModuleElem& f) {
    if (!fig.is_canonical())
        throw std::invalid_argument("gamma: only the canonical projection figure is supported");
    if (!(fam.spec() == fig.source))
        throw std::invalid_argument("gamma: family ring differs from the figure source");
    if (!(f.target == fig.target))
        throw std::invalid_argument("gamma: tangent element lives over the wrong ring");
    // Figure preservation: the t-derivative of each generator image must
    // project to zero under pi.
    for (const auto& img : fam.derivative())
        if (!apply_figure(fig, img).is_zero())
            throw std::invalid_argument("gamma: family does not preserve the figure");

    const PertRingSpec& target = fig.target;
    const int n = target.n;
    // Substitute mu^b -> lambda^b + delta*c^b into each derivative image;
    // the delta part is the new coefficient column.
    std::vector<Dual> gens;
    gens.reserve(static_cast<std::size_t>(n));
    for (int b = 1; b <= n; ++b)
        gens.push_back({PertElem::generator(target, b), f.coeffs[static_cast<std::size_t>(b - 1)]});

    std::vector<PertElem> out(static_cast<std::size_t>(n), PertElem(target));
    for (int a = 1; a <= n; ++a) {
        Dual acc{PertElem(target), PertElem(target)};
        for (const auto& [exps, c] : fam.derivative()[static_cast<std::size_t>(a - 1)].terms()) {
            Dual term{PertElem::constant(target, c), PertElem(target)};
            for (std::size_t b = 0; b < exps.size(); ++b)
                for (std::uint32_t j = 0; j < exps[b]; ++j) term = dual_mul(term, gens[b]);
            acc = Dual{acc.v + term.v, acc.d + term.d};
        }
        if (!acc.v.is_zero())
            throw std::logic_error("gamma: derivative image escapes the tangent module");
        out[static_cast<std::size_t>(a - 1)] = std::move(acc.d);
    }
    return TangentModuleElem{target, std::move(out)};
}

namespace {

// Closed form: gamma^b_a = (k+1) * udot^b_{a,a1..ak} lambda^{a1}..lambda^{ak},
// with udot read off the beta images (coefficient over orderings).
std::vector<std::vector<PertElem>> gamma_closed_form(const EndoFamily& fam,
                                                     const PertRingSpec& target) {
    const int n = target.n;
    const int K = fam.spec().k; // = target.k + 1
    std::vector<std::vector<PertElem>> entries(
        static_cast<std::size_t>(n),
        std::vector<PertElem>(static_cast<std::size_t>(n), PertElem(target)));
    for (int b = 1; b <= n; ++b) {
        for (const auto& [exps, c] : fam.derivative()[static_cast<std::size_t>(b - 1)].terms()) {
            const Rational udot = c / orderings(exps); // symmetric tensor value
            for (int a = 1; a <= n; ++a) {
                if (exps[static_cast<std::size_t>(a - 1)] == 0) continue;
                ExpVec rest = exps;
                rest[static_cast<std::size_t>(a - 1)] -= 1;
                entries[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)].add_term(
                    rest, Rational(K) * udot * orderings(rest));
            }
        }
    }
    return entries;
}

} // namespace

GammaOperator gamma_action(const EndoFamily& fam, const Figure& fig) {
    if (!fig.is_canonical())
        throw std::invalid_argument("gamma_action: only the canonical figure is supported");
    if (!fam.is_top_order())
        throw std::invalid_argument("gamma_action: family derivative must sit in top order k+1");
    const PertRingSpec& target = fig.target;
    const int n = target.n;

    GammaOperator gamma{target, {}};
    gamma.entries.assign(static_cast<std::size_t>(n),
                         std::vector<PertElem>(static_cast<std::size_t>(n), PertElem(target)));
    for (int a = 1; a <= n; ++a) {
        TangentModuleElem basis{target, std::vector<PertElem>(static_cast<std::size_t>(n), PertElem(target))};
        basis.coeffs[static_cast<std::size_t>(a - 1)] = PertElem::constant(target, 1);
        TangentModuleElem image = gamma_generic_apply(fam, fig, basis);
        for (int b = 1; b <= n; ++b)
            gamma.entries[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] =
                image.coeffs[static_cast<std::size_t>(b - 1)];
    }

    const auto closed = gamma_closed_form(fam, target);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!(gamma.entries[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
                  closed[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]))
                throw std::logic_error("gamma_action: generic route disagrees with the closed form");
    return gamma;
}

GammaBetaReport gamma_beta_check(const EndoFamily& fam) {
    if (fam.spec().k < 2)
        throw std::invalid_argument("gamma_beta_check: family ring must have order >= 2");
    if (!fam.is_top_order())
        throw std::invalid_argument("gamma_beta_check: family derivative must sit in top order");
    const int n = fam.spec().n;
    const int K = fam.spec().k;
    const Figure fig = canonical_figure(n, K - 1);

    GammaBetaReport report;
    report.factor = K;
    report.ok = true;

    // Generic gamma entries.
    std::vector<std::vector<PertElem>> generic(
        static_cast<std::size_t>(n),
        std::vector<PertElem>(static_cast<std::size_t>(n), PertElem(fig.target)));
    for (int a = 1; a <= n; ++a) {
        TangentModuleElem basis{fig.target,
                                std::vector<PertElem>(static_cast<std::size_t>(n), PertElem(fig.target))};
        basis.coeffs[static_cast<std::size_t>(a - 1)] = PertElem::constant(fig.target, 1);
        TangentModuleElem image = gamma_generic_apply(fam, fig, basis);
        for (int b = 1; b <= n; ++b)
            generic[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] =
                image.coeffs[static_cast<std::size_t>(b - 1)];
    }

    // (k+1) times the beta coefficient tensor, expanded independently from
    // the beta field images.
    const Derivation beta = beta_field(fam);
    EndoFamily beta_fam(fam.spec(), [&] {
        std::vector<PertElem> id;
        for (int a = 1; a <= n; ++a) id.push_back(PertElem::generator(fam.spec(), a));
        return id;
    }(), beta.images);
    const auto expected = gamma_closed_form(beta_fam, fig.target);

    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            const auto& got = generic[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
            const auto& want = expected[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)];
            if (!(got == want)) {
                report.ok = false;
                std::ostringstream os;
                os << "gamma entry (" << a << "," << b << "): got " << got.str() << ", expected "
                   << want.str();
                report.failures.push_back(os.str());
            }
        }
    return report;
}

} // namespace pertdef
