#include "ncgeo/sullivan.hpp"

#include <algorithm>

namespace ncgeo {

// ---------------------------------------------------------------- PolyForm

PolyForm::PolyForm(int vars, int degree) : vars_(vars), degree_(degree) {
    if (vars < 0 || vars > 20) throw std::invalid_argument("PolyForm: unsupported number of variables");
    if (degree < 0 || degree > vars) throw std::invalid_argument("PolyForm: degree out of range");
}

PolyForm PolyForm::constant(int vars, const GR& c) {
    PolyForm f(vars, 0);
    f.add_term(Exponents(static_cast<size_t>(vars), 0), 0, c);
    return f;
}

PolyForm PolyForm::lambda(int vars, int j) {
    PolyForm f(vars, 0);
    const Exponents zero(static_cast<size_t>(vars), 0);
    if (j == 0) {
        f.add_term(zero, 0, GR(1));
        for (int k = 0; k < vars; ++k) {
            Exponents e = zero;
            e[static_cast<size_t>(k)] = 1;
            f.add_term(e, 0, GR(-1));
        }
    } else {
        Exponents e = zero;
        e.at(static_cast<size_t>(j - 1)) = 1;
        f.add_term(e, 0, GR(1));
    }
    return f;
}

PolyForm PolyForm::dlambda(int vars, int j) { return lambda(vars, j).d(); }

int PolyForm::poly_degree() const {
    int best = -1;
    for (const auto& [key, c] : terms_) {
        int deg = 0;
        for (auto e : key.first) deg += e;
        best = std::max(best, deg);
    }
    return best;
}

void PolyForm::add_term(const Exponents& e, Mask dx, const GR& c) {
    if (e.size() != static_cast<size_t>(vars_)) throw std::invalid_argument("PolyForm: exponent length mismatch");
    if (degree_of(dx) != degree_) throw std::invalid_argument("PolyForm: differential degree mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{e, dx}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GR PolyForm::evaluate(const std::vector<GR>& x, Mask dx) const {
    if (x.size() != static_cast<size_t>(vars_)) throw std::invalid_argument("PolyForm::evaluate: point has wrong size");
    GR acc;
    for (const auto& [key, c] : terms_) {
        if (key.second != dx) continue;
        GR v = c;
        for (size_t k = 0; k < key.first.size(); ++k)
            for (uint8_t p = 0; p < key.first[k]; ++p) v *= x[k];
        acc += v;
    }
    return acc;
}

PolyForm PolyForm::d() const {
    if (degree_ == vars_) return PolyForm(vars_, degree_);
    PolyForm out(vars_, degree_ + 1);
    for (const auto& [key, c] : terms_) {
        for (int k = 0; k < vars_; ++k) {
            const auto uk = static_cast<size_t>(k);
            if (key.first[uk] == 0) continue;
            const Mask bit = Mask{1} << k;
            if (key.second & bit) continue;
            Exponents e = key.first;
            const GR power(static_cast<int64_t>(e[uk]));
            --e[uk];
            const int sign = wedge_sign(bit, key.second);
            out.add_term(e, key.second | bit, c * power * GR(sign));
        }
    }
    return out;
}

PolyForm& PolyForm::operator+=(const PolyForm& rhs) {
    if (rhs.vars_ != vars_) throw std::invalid_argument("PolyForm: variable count mismatch");
    if (rhs.is_zero()) return *this;
    if (is_zero()) degree_ = rhs.degree_;
    if (rhs.degree_ != degree_) throw std::invalid_argument("PolyForm: degree mismatch");
    for (const auto& [key, c] : rhs.terms_) add_term(key.first, key.second, c);
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& rhs) { return *this += rhs * GR(-1); }

PolyForm& PolyForm::operator*=(const GR& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, v] : terms_) v *= c;
    return *this;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.vars() != b.vars()) throw std::invalid_argument("wedge: variable count mismatch");
    const int deg = a.degree() + b.degree();
    if (deg > a.vars()) return PolyForm(a.vars(), a.degree());
    PolyForm out(a.vars(), deg);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            const int sign = wedge_sign(ka.second, kb.second);
            if (sign == 0) continue;
            PolyForm::Exponents e = ka.first;
            for (size_t k = 0; k < e.size(); ++k) e[k] = static_cast<uint8_t>(e[k] + kb.first[k]);
            out.add_term(e, ka.second | kb.second, ca * cb * GR(sign));
        }
    return out;
}

namespace {

// Substitutes x_k ↦ images[k] (0-forms in the new variables).
PolyForm pullback(const PolyForm& f, int new_vars, const std::vector<PolyForm>& images) {
    std::vector<PolyForm> diffs;
    diffs.reserve(images.size());
    for (const auto& im : images) diffs.push_back(im.d());
    if (f.degree() > new_vars) return PolyForm(new_vars, 0);
    PolyForm out(new_vars, f.degree());
    for (const auto& [key, c] : f.terms()) {
        PolyForm term = PolyForm::constant(new_vars, c);
        for (size_t k = 0; k < key.first.size(); ++k)
            for (uint8_t p = 0; p < key.first[k]; ++p) term = wedge(term, images[k]);
        for (int k : indices_of(key.second)) term = wedge(term, diffs[static_cast<size_t>(k)]);
        if (!term.is_zero()) out += term;
    }
    return out;
}

int position_of(const Simplex& s, int v) {
    auto it = std::find(s.begin(), s.end(), v);
    return it == s.end() ? -1 : static_cast<int>(it - s.begin());
}

}  // namespace

PolyForm restrict_poly(const PolyForm& f, const Simplex& sigma, const Simplex& tau) {
    if (!std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end()))
        throw std::invalid_argument("restrict_poly: tau is not a face of sigma");
    if (f.vars() != static_cast<int>(sigma.size()) - 1) throw std::invalid_argument("restrict_poly: form does not live on sigma");
    if (sigma == tau) return f;
    const int new_vars = static_cast<int>(tau.size()) - 1;
    std::vector<PolyForm> images;
    for (size_t k = 1; k < sigma.size(); ++k) {
        const int j = position_of(tau, sigma[k]);
        images.push_back(j < 0 ? PolyForm(new_vars, 0) : PolyForm::lambda(new_vars, j));
    }
    return pullback(f, new_vars, images);
}

PolyForm whitney_polynomial(const Simplex& tau, const Simplex& sigma) {
    const int vars = static_cast<int>(sigma.size()) - 1;
    const int r = static_cast<int>(tau.size()) - 1;
    if (r > vars || !std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end())) return PolyForm(vars, 0);
    std::vector<int> pos;
    for (int t : tau) pos.push_back(position_of(sigma, t));
    int64_t factorial = 1;
    for (int k = 2; k <= r; ++k) factorial *= k;
    PolyForm out(vars, r);
    for (int i = 0; i <= r; ++i) {
        PolyForm term = PolyForm::lambda(vars, pos[static_cast<size_t>(i)]);
        for (int j = 0; j <= r; ++j)
            if (j != i) term = wedge(term, PolyForm::dlambda(vars, pos[static_cast<size_t>(j)]));
        out += term * GR((i % 2 ? -1 : 1) * factorial);
    }
    return out;
}

// ------------------------------------------------------------ SullivanForm

SullivanForm::SullivanForm(std::shared_ptr<const SimplicialComplex> domain, int degree, int cap)
    : domain_(std::move(domain)), degree_(degree), cap_(cap) {
    if (!domain_) throw std::invalid_argument("SullivanForm: missing domain");
    if (degree < 0) throw std::invalid_argument("SullivanForm: negative degree");
}

SullivanForm SullivanForm::from_whitney(const WhitneyForm& w) {
    SullivanForm out(w.complex, w.degree, 1);
    const auto taus = w.complex->simplices(w.degree);
    for (int p = w.degree; p <= w.complex->dimension(); ++p)
        for (const auto& sigma : w.complex->simplices(p)) {
            PolyForm f(p, w.degree);
            for (const auto& e : w.coefficients.entries) f += whitney_polynomial(taus[e.index], sigma) * e.value;
            out.set(sigma, std::move(f));
        }
    return out;
}

PolyForm SullivanForm::on(const Simplex& s) const {
    auto it = pieces_.find(s);
    if (it != pieces_.end()) return it->second;
    const int vars = static_cast<int>(s.size()) - 1;
    return PolyForm(vars, std::min(degree_, vars));
}

void SullivanForm::set(const Simplex& s, PolyForm f) {
    if (!domain_->contains(s)) throw NotInComplex("SullivanForm::set: simplex outside the domain");
    if (f.vars() != static_cast<int>(s.size()) - 1) throw std::invalid_argument("SullivanForm::set: wrong variable count");
    if (f.is_zero()) {
        pieces_.erase(s);
        return;
    }
    if (f.degree() != degree_) throw std::invalid_argument("SullivanForm::set: degree mismatch");
    pieces_.insert_or_assign(s, std::move(f));
}

bool SullivanForm::is_valid() const {
    for (const auto& [s, f] : pieces_)
        if (f.poly_degree() > cap_) return false;
    // absent pieces are zero and must restrict to zero as well
    for (int p = 1; p <= domain_->dimension(); ++p)
        for (const auto& s : domain_->simplices(p)) {
            const PolyForm f = on(s);
            for (size_t i = 0; i < s.size(); ++i) {
                const Simplex fc = face(s, i);
                if (!(restrict_poly(f, s, fc) == on(fc))) return false;
            }
        }
    return true;
}

SullivanForm& SullivanForm::operator+=(const SullivanForm& rhs) {
    if (rhs.degree_ != degree_) throw std::invalid_argument("SullivanForm: degree mismatch");
    cap_ = std::max(cap_, rhs.cap_);
    for (const auto& [s, f] : rhs.pieces_) {
        if (!domain_->contains(s)) throw NotInComplex("SullivanForm: sum over different domains");
        set(s, on(s) + f);
    }
    return *this;
}

SullivanForm& SullivanForm::operator*=(const GR& c) {
    if (c.is_zero()) pieces_.clear();
    for (auto& [s, f] : pieces_) f *= c;
    return *this;
}

bool operator==(const SullivanForm& a, const SullivanForm& b) {
    return a.degree_ == b.degree_ && *a.domain_ == *b.domain_ && a.pieces_ == b.pieces_;
}

SullivanForm barycentric_multiply(int alpha, const SullivanForm& s) {
    return barycentric_multiply(alpha, s, s.domain());
}

SullivanForm barycentric_multiply(int alpha, const SullivanForm& s, std::shared_ptr<const SimplicialComplex> target) {
    SullivanForm out(target, s.degree(), s.cap() + 1);
    for (const auto& [sigma, f] : s.pieces()) {
        const int j = position_of(sigma, alpha);
        if (j < 0) continue;
        if (!target->contains(sigma)) continue;
        out.set(sigma, wedge(PolyForm::lambda(f.vars(), j), f));
    }
    // simplices of target that contain alpha must be covered by the source
    for (int p = 0; p <= target->dimension(); ++p)
        for (const auto& sigma : target->simplices(p))
            if (position_of(sigma, alpha) >= 0 && !s.domain()->contains(sigma))
                throw NotInComplex("barycentric_multiply: source domain does not cover the star of alpha in the target");
    return out;
}

SullivanForm sullivan_d(const SullivanForm& s) {
    SullivanForm out(s.domain(), s.degree() + 1, s.cap());
    for (const auto& [sigma, f] : s.pieces()) {
        PolyForm df = f.d();
        if (!df.is_zero()) out.set(sigma, std::move(df));
    }
    return out;
}

SullivanForm sullivan_restrict(const SullivanForm& s, std::shared_ptr<const SimplicialComplex> sub) {
    if (!sub->is_subcomplex_of(*s.domain())) throw NotInComplex("sullivan_restrict: not a subcomplex");
    SullivanForm out(sub, s.degree(), s.cap());
    for (const auto& [sigma, f] : s.pieces())
        if (sub->contains(sigma)) out.set(sigma, f);
    return out;
}

GR evaluate_at(const SullivanForm& f, const Simplex& s, const std::vector<GR>& barycentric) {
    if (f.degree() != 0) throw std::invalid_argument("evaluate_at: only 0-forms have point values");
    if (barycentric.size() != s.size()) throw std::invalid_argument("evaluate_at: one coordinate per vertex required");
    const std::vector<GR> local(barycentric.begin() + 1, barycentric.end());
    return f.on(s).evaluate(local, 0);
}

}  // namespace ncgeo
