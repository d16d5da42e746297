#pragma once

// Independent reference computations. They evaluate the defining formulas
// directly on basis tuples and share nothing with the library's index-merge
// kernels beyond the basis itself.

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "ncgeo/nc_form.hpp"

namespace oracle {

using ncgeo::DenseMatrix;
using ncgeo::GR;
using ncgeo::Mask;
using ncgeo::NCForm;

inline int inversion_sign(const std::vector<int>& seq) {
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

inline std::vector<int> bits(Mask m) {
    std::vector<int> out;
    for (int k = 0; k < 32; ++k)
        if (m & (Mask{1} << k)) out.push_back(k);
    return out;
}

inline DenseMatrix zero(int n) { return {static_cast<size_t>(n), static_cast<size_t>(n)}; }

/// w(ad X_{i1}, …, ad X_{iq}) for an arbitrary index tuple.
inline DenseMatrix eval_basis(const NCForm& w, const std::vector<int>& idx) {
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return zero(w.n());
    Mask m = 0;
    for (int k : sorted) m |= Mask{1} << k;
    DenseMatrix v = w.component(m);
    return v * GR(inversion_sign(idx));
}

/// w(Y_1, …, Y_q) with each Y given by basis coordinates; multilinear expansion.
inline DenseMatrix eval(const NCForm& w, const std::vector<std::vector<GR>>& args) {
    DenseMatrix acc = zero(w.n());
    std::vector<int> idx(args.size());
    std::function<void(size_t, GR)> rec = [&](size_t pos, GR coeff) {
        if (pos == args.size()) {
            acc += eval_basis(w, idx) * coeff;
            return;
        }
        for (size_t k = 0; k < args[pos].size(); ++k) {
            if (args[pos][k].is_zero()) continue;
            idx[pos] = static_cast<int>(k);
            rec(pos + 1, coeff * args[pos][k]);
        }
    };
    rec(0, GR(1));
    return acc;
}

inline std::vector<GR> unit_coords(int dim, int k) {
    std::vector<GR> v(static_cast<size_t>(dim));
    v[static_cast<size_t>(k)] = GR(1);
    return v;
}

/// Builds a form from its values on sorted basis tuples.
inline NCForm from_values(int n, int degree, const std::function<DenseMatrix(const std::vector<int>&)>& value) {
    const int dim = n * n - 1;
    NCForm out(n, degree);
    for (Mask m = 0; m < (Mask{1} << dim); ++m) {
        if (static_cast<int>(bits(m).size()) != degree) continue;
        out.add(m, value(bits(m)));
    }
    return out;
}

/// Chevalley–Eilenberg formula with coefficients in M_n under ad.
inline NCForm d_prime_direct(const NCForm& w) {
    const int n = w.n();
    const ncgeo::SlBasis basis(n);
    const int dim = basis.dim();
    if (w.degree() == dim) return NCForm(n, w.degree());
    return from_values(n, w.degree() + 1, [&](const std::vector<int>& t) {
        DenseMatrix acc = zero(n);
        const size_t p = t.size();
        for (size_t i = 0; i < p; ++i) {
            std::vector<int> rest;
            for (size_t j = 0; j < p; ++j)
                if (j != i) rest.push_back(t[j]);
            DenseMatrix v = eval_basis(w, rest);
            DenseMatrix b = basis[t[i]] * v - v * basis[t[i]];
            acc += b * GR(i % 2 ? -1 : 1);
        }
        for (size_t i = 0; i < p; ++i)
            for (size_t j = i + 1; j < p; ++j) {
                DenseMatrix br = basis[t[i]] * basis[t[j]] - basis[t[j]] * basis[t[i]];
                std::vector<std::vector<GR>> args{basis.coordinates(br)};
                for (size_t k = 0; k < p; ++k)
                    if (k != i && k != j) args.push_back(unit_coords(dim, t[k]));
                acc += eval(w, args) * GR((i + j) % 2 ? -1 : 1);
            }
        return acc;
    });
}

/// (L_k w)(Y_1, …) = [X_k, w(Y_1, …)] − Σ_i w(…, [X_k, Y_i], …).
inline NCForm lie_derivative_direct(int k, const NCForm& w) {
    const int n = w.n();
    const ncgeo::SlBasis basis(n);
    const int dim = basis.dim();
    return from_values(n, w.degree(), [&](const std::vector<int>& t) {
        DenseMatrix v = eval_basis(w, t);
        DenseMatrix acc = basis[k] * v - v * basis[k];
        for (size_t i = 0; i < t.size(); ++i) {
            std::vector<std::vector<GR>> args;
            for (size_t j = 0; j < t.size(); ++j) {
                if (j == i) {
                    DenseMatrix br = basis[k] * basis[t[j]] - basis[t[j]] * basis[k];
                    args.push_back(basis.coordinates(br));
                } else {
                    args.push_back(unit_coords(dim, t[j]));
                }
            }
            acc -= eval(w, args);
        }
        return acc;
    });
}

/// Σ_σ sgn σ · tr(X_{σ1} ⋯ X_{σm}) over all orderings, times the identity.
inline NCForm primitive_brute(int r, int n) {
    const ncgeo::SlBasis basis(n);
    return from_values(n, 2 * r - 1, [&](const std::vector<int>& t) {
        std::vector<int> perm = t;
        GR total;
        do {
            DenseMatrix prod = DenseMatrix::identity(static_cast<size_t>(n));
            for (int k : perm) prod = prod * basis[k];
            total += prod.trace() * GR(inversion_sign(perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return DenseMatrix::identity(static_cast<size_t>(n)) * total;
    });
}

/// Plain Gauss–Jordan rank over Q(i) on a dense row list.
inline size_t dense_rank(std::vector<std::vector<GR>> rows) {
    size_t rank = 0;
    const size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        const GR inv = rows[rank][c].inverse();
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            const GR f = rows[r][c] * inv;
            for (size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<GR>> dense_rows(const ncgeo::SparseMatrix& m) {
    std::vector<std::vector<GR>> out(m.rows(), std::vector<GR>(m.cols()));
    for (size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r).entries) out[r][e.index] = e.value;
    return out;
}

}  // namespace oracle
