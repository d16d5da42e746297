#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncgeo/gaussian_rational.hpp"
#include "ncgeo/parallel.hpp"

namespace ncgeo {

struct SparseEntry {
    uint32_t index;
    GR value;
};

/// Sorted list of nonzero coordinates. Entries are strictly increasing in
/// index and never hold a zero value.
struct SparseVector {
    std::vector<SparseEntry> entries;

    [[nodiscard]] bool empty() const { return entries.empty(); }
    [[nodiscard]] size_t nnz() const { return entries.size(); }
    /// Value at index, zero when absent.
    [[nodiscard]] GR at(uint32_t index) const;
    [[nodiscard]] const GR* find(uint32_t index) const;

    /// Builds from unsorted (index, value) pairs, summing duplicates.
    static SparseVector from_unsorted(std::vector<SparseEntry> raw);
    static SparseVector unit(uint32_t index, GR value = GR(1));

    friend bool operator==(const SparseVector& a, const SparseVector& b);
};

/// y + a·x, merging sorted supports.
SparseVector axpy(const SparseVector& y, const GR& a, const SparseVector& x);
SparseVector scaled(const SparseVector& x, const GR& a);

struct Triplet {
    uint32_t row;
    uint32_t col;
    GR value;
};

/// Row-major sparse matrix over Q(i). No stored entry is zero and every
/// index lies in bounds.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    /// Sums duplicate triplets and drops zeros.
    static SparseMatrix from_triplets(size_t rows, size_t cols, std::vector<Triplet> triplets);
    /// Builds from column vectors (each indexed by row).
    static SparseMatrix from_columns(size_t rows, std::span<const SparseVector> columns);
    static SparseMatrix from_rows(size_t cols, std::vector<SparseVector> rows);
    static SparseMatrix identity(size_t n);

    [[nodiscard]] size_t rows() const { return rows_; }
    [[nodiscard]] size_t cols() const { return cols_; }
    [[nodiscard]] size_t nnz() const;
    [[nodiscard]] bool is_zero() const;

    [[nodiscard]] const SparseVector& row(size_t r) const { return data_.at(r); }
    [[nodiscard]] std::span<const SparseVector> row_data() const { return data_; }
    [[nodiscard]] GR at(size_t r, size_t c) const;
    void set(size_t r, size_t c, const GR& value);

    [[nodiscard]] SparseMatrix transpose() const;
    /// Matrix-vector product; x is indexed by column.
    [[nodiscard]] SparseVector apply(const SparseVector& x) const;
    [[nodiscard]] SparseMatrix multiply(const SparseMatrix& rhs) const;
    /// Stacks rows of rhs below this matrix (equal column counts required).
    [[nodiscard]] SparseMatrix vstack(const SparseMatrix& rhs) const;

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<SparseVector> data_;
};

/// Small dense matrix, used for n×n matrix values, adjoint matrices and the
/// dense reference elimination.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(size_t n);
    static DenseMatrix unit(size_t n, size_t r, size_t c);

    [[nodiscard]] size_t rows() const { return rows_; }
    [[nodiscard]] size_t cols() const { return cols_; }
    GR& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const GR& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    [[nodiscard]] std::span<const GR> data() const { return data_; }

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] GR trace() const;
    [[nodiscard]] DenseMatrix conjugate_transpose() const;
    [[nodiscard]] GR determinant() const;
    [[nodiscard]] size_t rank() const;

    DenseMatrix& operator+=(const DenseMatrix& rhs);
    DenseMatrix& operator-=(const DenseMatrix& rhs);
    DenseMatrix& operator*=(const GR& s);
    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, const GR& s) { return a *= s; }
    friend DenseMatrix operator*(const GR& s, DenseMatrix a) { return a *= s; }
    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<GR> data_;
};

/// Exact rank over Q(i). Matrices with fewer than 64 columns go through the
/// dense fraction-free path; larger ones through sparse elimination.
size_t rank(const SparseMatrix& m, Execution exec = Execution::parallel);
/// Sparse elimination with fill-minimizing pivot choice.
size_t rank_sparse(const SparseMatrix& m, Execution exec = Execution::parallel);
/// Serial dense Bareiss elimination, the reference the sparse kernels are
/// tested against.
size_t rank_reference(const SparseMatrix& m);

/// Row space basis in reduced row-echelon form.
class SubspaceBasis {
public:
    SubspaceBasis() = default;
    explicit SubspaceBasis(size_t ambient_dim) : ambient_(ambient_dim) {}

    /// Reduced row-echelon basis of the span of the given vectors.
    static SubspaceBasis span(size_t ambient_dim, std::span<const SparseVector> vectors);
    static SubspaceBasis whole(size_t ambient_dim);

    [[nodiscard]] size_t ambient_dim() const { return ambient_; }
    [[nodiscard]] size_t dim() const { return vectors_.size(); }
    [[nodiscard]] std::span<const SparseVector> vectors() const { return vectors_; }
    [[nodiscard]] std::span<const uint32_t> pivots() const { return pivots_; }

    /// Subtracts the span's component at every pivot column.
    [[nodiscard]] SparseVector reduce(const SparseVector& v) const;
    [[nodiscard]] bool contains(const SparseVector& v) const { return reduce(v).empty(); }
    /// Coordinates in this basis, or nullopt when v is outside the span.
    [[nodiscard]] std::optional<std::vector<GR>> coordinates(const SparseVector& v) const;
    [[nodiscard]] bool contains(const SubspaceBasis& other) const;

    friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b);

private:
    friend class EchelonBuilder;
    size_t ambient_ = 0;
    std::vector<SparseVector> vectors_;
    std::vector<uint32_t> pivots_;
};

/// Incremental reduced row-echelon form.
class EchelonBuilder {
public:
    explicit EchelonBuilder(size_t ambient_dim);
    /// Returns true when v was independent of what is already stored.
    bool insert(const SparseVector& v);
    [[nodiscard]] size_t rank() const { return rows_.size(); }
    [[nodiscard]] SparseVector reduce(const SparseVector& v) const;
    [[nodiscard]] SubspaceBasis finish() const;

private:
    size_t ambient_;
    std::vector<SparseVector> rows_;
    std::vector<int32_t> pivot_row_;
};

class NotASubspace : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SubspaceBasis kernel_basis(const SparseMatrix& m);
/// Basis of the column space.
SubspaceBasis image_basis(const SparseMatrix& m);
/// Deterministic representatives of closed / exact. Throws NotASubspace when
/// exact is not contained in closed.
SubspaceBasis quotient_representatives(const SubspaceBasis& closed, const SubspaceBasis& exact);

/// Coordinates of classes in closed / exact relative to the representatives
/// returned by quotient_representatives.
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(SubspaceBasis closed, SubspaceBasis exact);

    [[nodiscard]] size_t dim() const { return reps_.dim(); }
    [[nodiscard]] const SubspaceBasis& representatives() const { return reps_; }
    [[nodiscard]] const SubspaceBasis& closed() const { return closed_; }
    [[nodiscard]] const SubspaceBasis& exact() const { return exact_; }
    /// Class coordinates of a closed vector; throws NotASubspace if v is not closed.
    [[nodiscard]] std::vector<GR> class_of(const SparseVector& v) const;

private:
    SubspaceBasis closed_;
    SubspaceBasis exact_;
    SubspaceBasis reps_;
};

/// Some x with m·x = b, or nullopt when the system is inconsistent.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b);

/// Converts a coordinate list into a sparse vector.
SparseVector to_sparse(std::span<const GR> dense);
std::vector<GR> to_dense(const SparseVector& v, size_t dim);

}  // namespace ncgeo
