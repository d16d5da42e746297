#include "ncgeo/lie.hpp"

#include <map>
#include <mutex>

namespace ncgeo {

DenseMatrix bracket(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw SizeMismatch("bracket: operands must be square of equal size");
    return a * b - b * a;
}

// ------------------------------------------------------------------ basis

SlBasis::SlBasis(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SlBasis: n must be at least 1");
    const auto un = static_cast<size_t>(n);
    for (size_t i = 0; i < un; ++i)
        for (size_t j = 0; j < un; ++j) {
            if (i == j) continue;
            elements_.push_back(DenseMatrix::unit(un, i, j));
            labels_.push_back("E_" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    for (size_t k = 0; k + 1 < un; ++k) {
        DenseMatrix h(un, un);
        h(k, k) = GR(1);
        h(k + 1, k + 1) = GR(-1);
        elements_.push_back(std::move(h));
        labels_.push_back("H_" + std::to_string(k + 1));
    }
}

std::vector<GR> SlBasis::coordinates(const DenseMatrix& x) const {
    const auto un = static_cast<size_t>(n_);
    if (x.rows() != un || x.cols() != un) throw SizeMismatch("SlBasis::coordinates: wrong matrix size");
    if (!x.trace().is_zero()) throw std::domain_error("SlBasis::coordinates: matrix is not traceless");
    std::vector<GR> out;
    out.reserve(static_cast<size_t>(dim()));
    for (size_t i = 0; i < un; ++i)
        for (size_t j = 0; j < un; ++j)
            if (i != j) out.push_back(x(i, j));
    // diag(d) = Σ h_k H_k  ⇒  h_k = d_1 + … + d_k
    GR partial;
    for (size_t k = 0; k + 1 < un; ++k) {
        partial += x(k, k);
        out.push_back(partial);
    }
    return out;
}

DenseMatrix SlBasis::combine(const std::vector<GR>& coords) const {
    if (coords.size() != elements_.size()) throw SizeMismatch("SlBasis::combine: wrong coordinate count");
    const auto un = static_cast<size_t>(n_);
    DenseMatrix out(un, un);
    for (size_t k = 0; k < coords.size(); ++k) {
        if (!coords[k].is_zero()) out += elements_[k] * coords[k];
    }
    return out;
}

StructureConstants structure_constants(const SlBasis& basis) {
    const int d = basis.dim();
    std::vector<std::vector<SparseVector>> table(static_cast<size_t>(d), std::vector<SparseVector>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            DenseMatrix b = bracket(basis[i], basis[j]);
            std::vector<GR> coords;
            try {
                coords = basis.coordinates(b);
            } catch (const std::domain_error&) {
                throw std::runtime_error("structure_constants: basis is not closed under the bracket");
            }
            if (!(basis.combine(coords) == b))
                throw std::runtime_error("structure_constants: coordinate solve failed");
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] = to_sparse(coords);
        }
    return StructureConstants(std::move(table));
}

// ------------------------------------------------------------------ group

GroupElement::GroupElement(DenseMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
        throw InvalidGroupElement("GroupElement: matrix must be square and nonempty");
    const size_t n = matrix_.rows();
    if (!(matrix_.conjugate_transpose() * matrix_ == DenseMatrix::identity(n)))
        throw InvalidGroupElement("GroupElement: matrix is not unitary");
    if (!matrix_.determinant().is_one()) throw InvalidGroupElement("GroupElement: determinant is not 1");
}

GroupElement GroupElement::identity(int n) {
    return {DenseMatrix::identity(static_cast<size_t>(n)), Trusted{}};
}

GroupElement GroupElement::inverse() const { return {matrix_.conjugate_transpose(), Trusted{}}; }

bool GroupElement::is_identity() const { return matrix_ == DenseMatrix::identity(matrix_.rows()); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.n() != b.n()) throw SizeMismatch("GroupElement: size mismatch in product");
    return {a.matrix_ * b.matrix_, GroupElement::Trusted{}};
}

DenseMatrix adjoint_action(const GroupElement& g, const DenseMatrix& x) {
    if (x.rows() != static_cast<size_t>(g.n()) || x.cols() != x.rows())
        throw SizeMismatch("adjoint_action: size mismatch");
    return g.inverse().matrix() * x * g.matrix();
}

DenseMatrix adjoint_matrix(const GroupElement& g, const SlBasis& basis) {
    if (g.n() != basis.n()) throw SizeMismatch("adjoint_matrix: size mismatch");
    const auto d = static_cast<size_t>(basis.dim());
    DenseMatrix out(d, d);
    const DenseMatrix& m = g.matrix();
    const DenseMatrix minv = g.inverse().matrix();
    for (size_t j = 0; j < d; ++j) {
        auto coords = basis.coordinates(m * basis[static_cast<int>(j)] * minv);
        for (size_t i = 0; i < d; ++i) out(i, j) = coords[i];
    }
    return out;
}

namespace {

GroupElement diagonal_phase(int n, int first) {
    DenseMatrix m = DenseMatrix::identity(static_cast<size_t>(n));
    const auto f = static_cast<size_t>(first);
    m(f, f) = GR::i();
    m(f + 1, f + 1) = -GR::i();
    return GroupElement(std::move(m));
}

GroupElement signed_transposition(int n, int first) {
    DenseMatrix m = DenseMatrix::identity(static_cast<size_t>(n));
    const auto f = static_cast<size_t>(first);
    m(f, f) = GR(0);
    m(f + 1, f + 1) = GR(0);
    m(f, f + 1) = GR(1);
    m(f + 1, f) = GR(-1);
    return GroupElement(std::move(m));
}

GroupElement cyclic_shift(int n) {
    const auto un = static_cast<size_t>(n);
    DenseMatrix m(un, un);
    for (size_t k = 0; k < un; ++k) m((k + 1) % un, k) = GR(1);
    // an n-cycle has sign (−1)^(n−1)
    if (n % 2 == 0) m(0, un - 1) = GR(-1);
    return GroupElement(std::move(m));
}

}  // namespace

std::vector<GroupElement> test_group_elements(int n) {
    std::vector<GroupElement> out{GroupElement::identity(n)};
    if (n < 2) return out;
    const GroupElement d1 = diagonal_phase(n, 0);
    const GroupElement p1 = signed_transposition(n, 0);
    out.push_back(d1);
    out.push_back(p1);
    out.push_back(d1 * p1);
    if (n >= 3) {
        const GroupElement d2 = diagonal_phase(n, n - 2);
        const GroupElement c = cyclic_shift(n);
        out.push_back(d2);
        out.push_back(c);
        out.push_back(c * d1);
        out.push_back(p1 * d2 * c);
    }
    return out;
}

std::vector<GroupElement> extended_test_elements(int n) {
    auto out = test_group_elements(n);
    if (n < 2) return out;
    DenseMatrix rot = DenseMatrix::identity(static_cast<size_t>(n));
    rot(0, 0) = GR(Rational(3, 5));
    rot(0, 1) = GR(Rational(-4, 5));
    rot(1, 0) = GR(Rational(4, 5));
    rot(1, 1) = GR(Rational(3, 5));
    GroupElement r(std::move(rot));
    DenseMatrix phase = DenseMatrix::identity(static_cast<size_t>(n));
    phase(0, 0) = GR(Rational(3, 5), Rational(4, 5));
    phase(1, 1) = GR(Rational(3, 5), Rational(-4, 5));
    GroupElement ph(std::move(phase));
    out.push_back(r);
    out.push_back(ph * r);
    out.push_back(r * out[2]);
    return out;
}

// ---------------------------------------------------------------- context

LieContext::LieContext(int n_)
    : n(n_), dim(n_ * n_ - 1), basis(n_), constants(structure_constants(basis)), exterior(n_ * n_ - 1) {
    const auto count = size_t{1} << dim;
    d_scalar_.resize(count);
    for (Mask s = 0; s < count; ++s) {
        std::map<Mask, GR> acc;
        const auto idx = indices_of(s);
        for (size_t m = 0; m < idx.size(); ++m) {
            const GR slot_sign = (m % 2 == 0) ? GR(1) : GR(-1);
            // d e^t = −Σ_{i<j} c_ij^t e^i ∧ e^j
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j) {
                    const GR* c = constants(i, j).find(static_cast<uint32_t>(idx[m]));
                    if (!c) continue;
                    std::vector<int> seq(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m));
                    seq.push_back(i);
                    seq.push_back(j);
                    seq.insert(seq.end(), idx.begin() + static_cast<std::ptrdiff_t>(m) + 1, idx.end());
                    auto sorted = sort_indices(seq);
                    if (sorted.sign == 0) continue;
                    acc[sorted.mask] -= slot_sign * *c * GR(sorted.sign);
                }
        }
        for (auto& [mask, v] : acc)
            if (!v.is_zero()) d_scalar_[s].emplace_back(mask, v);
    }
    const auto un = static_cast<size_t>(n);
    bracket_units_.reserve(static_cast<size_t>(dim) * un * un);
    for (int k = 0; k < dim; ++k)
        for (size_t a = 0; a < un; ++a)
            for (size_t b = 0; b < un; ++b) bracket_units_.push_back(bracket(basis[k], DenseMatrix::unit(un, a, b)));
}

const LieContext& lie_context(int n) {
    static std::mutex guard;
    static std::map<int, std::unique_ptr<LieContext>> cache;
    std::lock_guard<std::mutex> lock(guard);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<LieContext>(n);
    return *slot;
}

}  // namespace ncgeo
