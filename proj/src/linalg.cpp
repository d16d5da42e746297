#include "ncgeo/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "ncgeo/parallel.hpp"

namespace ncgeo {

// ---------------------------------------------------------------- vectors

GR SparseVector::at(uint32_t index) const {
    const GR* v = find(index);
    return v ? *v : GR();
}

const GR* SparseVector::find(uint32_t index) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), index,
                               [](const SparseEntry& e, uint32_t i) { return e.index < i; });
    if (it == entries.end() || it->index != index) return nullptr;
    return &it->value;
}

SparseVector SparseVector::from_unsorted(std::vector<SparseEntry> raw) {
    std::stable_sort(raw.begin(), raw.end(),
                     [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    SparseVector out;
    out.entries.reserve(raw.size());
    for (auto& e : raw) {
        if (!out.entries.empty() && out.entries.back().index == e.index) {
            out.entries.back().value += e.value;
        } else {
            out.entries.push_back(std::move(e));
        }
    }
    std::erase_if(out.entries, [](const SparseEntry& e) { return e.value.is_zero(); });
    return out;
}

SparseVector SparseVector::unit(uint32_t index, GR value) {
    SparseVector v;
    if (!value.is_zero()) v.entries.push_back({index, std::move(value)});
    return v;
}

bool operator==(const SparseVector& a, const SparseVector& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (size_t k = 0; k < a.entries.size(); ++k) {
        if (a.entries[k].index != b.entries[k].index || !(a.entries[k].value == b.entries[k].value)) return false;
    }
    return true;
}

SparseVector axpy(const SparseVector& y, const GR& a, const SparseVector& x) {
    if (a.is_zero() || x.empty()) return y;
    SparseVector out;
    out.entries.reserve(y.nnz() + x.nnz());
    size_t i = 0;
    size_t j = 0;
    const bool a_one = a.is_one();
    while (i < y.entries.size() || j < x.entries.size()) {
        if (j == x.entries.size() || (i < y.entries.size() && y.entries[i].index < x.entries[j].index)) {
            out.entries.push_back(y.entries[i++]);
        } else if (i == y.entries.size() || x.entries[j].index < y.entries[i].index) {
            out.entries.push_back({x.entries[j].index, a_one ? x.entries[j].value : a * x.entries[j].value});
            ++j;
        } else {
            GR v = y.entries[i].value + (a_one ? x.entries[j].value : a * x.entries[j].value);
            if (!v.is_zero()) out.entries.push_back({y.entries[i].index, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVector scaled(const SparseVector& x, const GR& a) {
    SparseVector out;
    if (a.is_zero()) return out;
    out.entries.reserve(x.nnz());
    for (const auto& e : x.entries) out.entries.push_back({e.index, a * e.value});
    return out;
}

SparseVector to_sparse(std::span<const GR> dense) {
    SparseVector v;
    for (size_t k = 0; k < dense.size(); ++k) {
        if (!dense[k].is_zero()) v.entries.push_back({static_cast<uint32_t>(k), dense[k]});
    }
    return v;
}

std::vector<GR> to_dense(const SparseVector& v, size_t dim) {
    std::vector<GR> out(dim);
    for (const auto& e : v.entries) out.at(e.index) = e.value;
    return out;
}

// ---------------------------------------------------------- sparse matrix

SparseMatrix SparseMatrix::from_triplets(size_t rows, size_t cols, std::vector<Triplet> triplets) {
    SparseMatrix m(rows, cols);
    std::vector<std::vector<SparseEntry>> raw(rows);
    for (auto& t : triplets) {
        if (t.row >= rows || t.col >= cols) throw std::out_of_range("SparseMatrix: triplet out of bounds");
        raw[t.row].push_back({t.col, std::move(t.value)});
    }
    for (size_t r = 0; r < rows; ++r) m.data_[r] = SparseVector::from_unsorted(std::move(raw[r]));
    return m;
}

SparseMatrix SparseMatrix::from_columns(size_t rows, std::span<const SparseVector> columns) {
    SparseMatrix m(rows, columns.size());
    std::vector<std::vector<SparseEntry>> raw(rows);
    for (size_t c = 0; c < columns.size(); ++c) {
        for (const auto& e : columns[c].entries) {
            if (e.index >= rows) throw std::out_of_range("SparseMatrix: column entry out of bounds");
            raw[e.index].push_back({static_cast<uint32_t>(c), e.value});
        }
    }
    for (size_t r = 0; r < rows; ++r) m.data_[r].entries = std::move(raw[r]);
    return m;
}

SparseMatrix SparseMatrix::from_rows(size_t cols, std::vector<SparseVector> rows) {
    SparseMatrix m(rows.size(), cols);
    for (auto& r : rows) {
        if (!r.empty() && r.entries.back().index >= cols) throw std::out_of_range("SparseMatrix: row entry out of bounds");
    }
    m.data_ = std::move(rows);
    return m;
}

SparseMatrix SparseMatrix::identity(size_t n) {
    SparseMatrix m(n, n);
    for (size_t k = 0; k < n; ++k) m.data_[k] = SparseVector::unit(static_cast<uint32_t>(k));
    return m;
}

size_t SparseMatrix::nnz() const {
    size_t total = 0;
    for (const auto& r : data_) total += r.nnz();
    return total;
}

bool SparseMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const SparseVector& r) { return r.empty(); });
}

GR SparseMatrix::at(size_t r, size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::at");
    return data_[r].at(static_cast<uint32_t>(c));
}

void SparseMatrix::set(size_t r, size_t c, const GR& value) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set");
    auto& entries = data_[r].entries;
    auto it = std::lower_bound(entries.begin(), entries.end(), static_cast<uint32_t>(c),
                               [](const SparseEntry& e, uint32_t i) { return e.index < i; });
    const bool present = it != entries.end() && it->index == c;
    if (value.is_zero()) {
        if (present) entries.erase(it);
    } else if (present) {
        it->value = value;
    } else {
        entries.insert(it, {static_cast<uint32_t>(c), value});
    }
}

SparseMatrix SparseMatrix::transpose() const {
    return from_columns(cols_, data_);
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
    SparseVector out;
    for (size_t r = 0; r < rows_; ++r) {
        const auto& row = data_[r].entries;
        if (row.empty()) continue;
        GR acc;
        size_t i = 0;
        size_t j = 0;
        while (i < row.size() && j < x.entries.size()) {
            if (row[i].index < x.entries[j].index) {
                ++i;
            } else if (x.entries[j].index < row[i].index) {
                ++j;
            } else {
                acc += row[i].value * x.entries[j].value;
                ++i;
                ++j;
            }
        }
        if (!acc.is_zero()) out.entries.push_back({static_cast<uint32_t>(r), std::move(acc)});
    }
    return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMatrix::multiply: shape mismatch");
    SparseMatrix out(rows_, rhs.cols_);
    for (size_t r = 0; r < rows_; ++r) {
        SparseVector acc;
        for (const auto& e : data_[r].entries) acc = axpy(acc, e.value, rhs.data_[e.index]);
        out.data_[r] = std::move(acc);
    }
    return out;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& rhs) const {
    if (cols_ != rhs.cols_) throw std::invalid_argument("SparseMatrix::vstack: column mismatch");
    SparseMatrix out(rows_ + rhs.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(rhs.data_.begin(), rhs.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(rows_));
    return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ----------------------------------------------------------- dense matrix

DenseMatrix DenseMatrix::identity(size_t n) {
    DenseMatrix m(n, n);
    for (size_t k = 0; k < n; ++k) m(k, k) = GR(1);
    return m;
}

DenseMatrix DenseMatrix::unit(size_t n, size_t r, size_t c) {
    DenseMatrix m(n, n);
    m(r, c) = GR(1);
    return m;
}

bool DenseMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const GR& v) { return v.is_zero(); });
}

GR DenseMatrix::trace() const {
    GR t;
    for (size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
    return t;
}

DenseMatrix DenseMatrix::conjugate_transpose() const {
    DenseMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
    return out;
}

GR DenseMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("DenseMatrix::determinant: not square");
    // Bareiss: every division below is exact, the final pivot is the determinant.
    DenseMatrix a = *this;
    const size_t n = rows_;
    GR prev(1);
    int sign = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) return GR(0);
        if (p != k) {
            for (size_t c = 0; c < n; ++c) std::swap(a(p, c), a(k, c));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = GR(0);
        }
        prev = a(k, k);
    }
    return sign > 0 ? prev : -prev;
}

size_t DenseMatrix::rank() const {
    DenseMatrix a = *this;
    GR prev(1);
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t p = r;
        while (p < rows_ && a(p, c).is_zero()) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (size_t j = 0; j < cols_; ++j) std::swap(a(p, j), a(r, j));
        for (size_t i = r + 1; i < rows_; ++i) {
            for (size_t j = c + 1; j < cols_; ++j) a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
            a(i, c) = GR(0);
        }
        prev = a(r, c);
        ++r;
    }
    return r;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(const GR& s) {
    for (auto& v : data_) v *= s;
    return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix out(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const GR& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
            }
        }
    return out;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ------------------------------------------------------------------- rank

size_t rank_reference(const SparseMatrix& m) {
    DenseMatrix d(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r).entries) d(r, e.index) = e.value;
    return d.rank();
}

namespace {

struct RowUpdate {
    SparseVector row;
    std::vector<uint32_t> added;
    std::vector<uint32_t> removed;
};

}  // namespace

size_t rank_sparse(const SparseMatrix& m, Execution exec) {
    const size_t ncols = m.cols();
    std::vector<SparseVector> rows;
    rows.reserve(m.rows());
    for (const auto& r : m.row_data())
        if (!r.empty()) rows.push_back(r);
    const size_t nrows = rows.size();

    std::vector<uint32_t> col_count(ncols, 0);
    std::vector<std::vector<uint32_t>> col_rows(ncols);
    for (uint32_t i = 0; i < nrows; ++i)
        for (const auto& e : rows[i].entries) {
            ++col_count[e.index];
            col_rows[e.index].push_back(i);
        }

    std::vector<char> active(nrows, 1);
    std::vector<uint32_t> stamp(nrows, std::numeric_limits<uint32_t>::max());
    size_t remaining = nrows;
    size_t rank_found = 0;
    uint32_t step = 0;

    while (remaining > 0) {
        // Row with fewest entries, then the column in it touching fewest rows.
        size_t best = nrows;
        size_t best_nnz = std::numeric_limits<size_t>::max();
        for (size_t i = 0; i < nrows; ++i) {
            if (!active[i]) continue;
            if (rows[i].empty()) {
                active[i] = 0;
                --remaining;
                continue;
            }
            if (rows[i].nnz() < best_nnz) {
                best_nnz = rows[i].nnz();
                best = i;
                if (best_nnz == 1) break;
            }
        }
        if (best == nrows) break;

        SparseVector pivot = std::move(rows[best]);
        active[best] = 0;
        --remaining;
        size_t pos = 0;
        uint64_t best_score = std::numeric_limits<uint64_t>::max();
        for (size_t k = 0; k < pivot.entries.size(); ++k) {
            uint64_t score = 2 * static_cast<uint64_t>(col_count[pivot.entries[k].index]) +
                             (pivot.entries[k].value.is_unit() ? 0 : 1);
            if (score < best_score) {
                best_score = score;
                pos = k;
            }
        }
        const uint32_t col = pivot.entries[pos].index;
        if (!pivot.entries[pos].value.is_one()) pivot = scaled(pivot, pivot.entries[pos].value.inverse());
        for (const auto& e : pivot.entries) --col_count[e.index];
        ++rank_found;

        std::vector<uint32_t> targets;
        for (uint32_t i : col_rows[col]) {
            if (!active[i] || stamp[i] == step) continue;
            stamp[i] = step;
            if (rows[i].find(col)) targets.push_back(i);
        }
        std::vector<uint32_t>().swap(col_rows[col]);

        std::vector<RowUpdate> updates(targets.size());
        auto work = [&](size_t t) {
            const SparseVector& row = rows[targets[t]];
            const GR factor = -row.at(col);
            RowUpdate& u = updates[t];
            u.row.entries.reserve(row.nnz() + pivot.nnz());
            size_t i = 0;
            size_t j = 0;
            const auto& a = row.entries;
            const auto& b = pivot.entries;
            while (i < a.size() || j < b.size()) {
                if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
                    u.row.entries.push_back(a[i++]);
                } else if (i == a.size() || b[j].index < a[i].index) {
                    u.row.entries.push_back({b[j].index, factor * b[j].value});
                    u.added.push_back(b[j].index);
                    ++j;
                } else {
                    GR v = a[i].value + factor * b[j].value;
                    if (v.is_zero()) {
                        u.removed.push_back(a[i].index);
                    } else {
                        u.row.entries.push_back({a[i].index, std::move(v)});
                    }
                    ++i;
                    ++j;
                }
            }
        };
        parallel_for(targets.size(), exec, work);

        for (size_t t = 0; t < targets.size(); ++t) {
            const uint32_t i = targets[t];
            rows[i] = std::move(updates[t].row);
            for (uint32_t c : updates[t].removed) --col_count[c];
            for (uint32_t c : updates[t].added) {
                ++col_count[c];
                col_rows[c].push_back(i);
            }
        }
        ++step;
    }
    return rank_found;
}

size_t rank(const SparseMatrix& m, Execution exec) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.cols() < 64 && m.rows() < 256) return rank_reference(m);
    // elimination cost is driven by the shorter side
    if (m.cols() < m.rows() / 2) return rank_sparse(m.transpose(), exec);
    return rank_sparse(m, exec);
}

// ---------------------------------------------------------------- echelon

EchelonBuilder::EchelonBuilder(size_t ambient_dim) : ambient_(ambient_dim), pivot_row_(ambient_dim, -1) {}

SparseVector EchelonBuilder::reduce(const SparseVector& v) const {
    // Rows are fully reduced, so each pivot present in v needs one subtraction
    // and none of them re-introduces another pivot column.
    std::vector<std::pair<int32_t, GR>> hits;
    for (const auto& e : v.entries) {
        if (e.index >= ambient_) throw std::out_of_range("EchelonBuilder: vector exceeds ambient dimension");
        int32_t r = pivot_row_[e.index];
        if (r >= 0) hits.emplace_back(r, e.value);
    }
    if (hits.empty()) return v;
    if (hits.size() == 1) return axpy(v, -hits[0].second, rows_[static_cast<size_t>(hits[0].first)]);
    // dense accumulation for many hits
    std::vector<SparseEntry> raw = v.entries;
    for (const auto& [r, coeff] : hits) {
        for (const auto& e : rows_[static_cast<size_t>(r)].entries) raw.push_back({e.index, -coeff * e.value});
    }
    return SparseVector::from_unsorted(std::move(raw));
}

bool EchelonBuilder::insert(const SparseVector& v) {
    SparseVector w = reduce(v);
    if (w.empty()) return false;
    const uint32_t lead = w.entries.front().index;
    if (!w.entries.front().value.is_one()) w = scaled(w, w.entries.front().value.inverse());
    for (auto& row : rows_) {
        const GR* hit = row.find(lead);
        if (hit) {
            GR coeff = -*hit;
            row = axpy(row, coeff, w);
        }
    }
    pivot_row_[lead] = static_cast<int32_t>(rows_.size());
    rows_.push_back(std::move(w));
    return true;
}

SubspaceBasis EchelonBuilder::finish() const {
    SubspaceBasis out(ambient_);
    std::vector<size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return rows_[a].entries.front().index < rows_[b].entries.front().index;
    });
    for (size_t k : order) {
        out.pivots_.push_back(rows_[k].entries.front().index);
        out.vectors_.push_back(rows_[k]);
    }
    return out;
}

// --------------------------------------------------------------- subspace

SubspaceBasis SubspaceBasis::span(size_t ambient_dim, std::span<const SparseVector> vectors) {
    EchelonBuilder b(ambient_dim);
    for (const auto& v : vectors) b.insert(v);
    return b.finish();
}

SubspaceBasis SubspaceBasis::whole(size_t ambient_dim) {
    SubspaceBasis out(ambient_dim);
    for (size_t k = 0; k < ambient_dim; ++k) {
        out.pivots_.push_back(static_cast<uint32_t>(k));
        out.vectors_.push_back(SparseVector::unit(static_cast<uint32_t>(k)));
    }
    return out;
}

SparseVector SubspaceBasis::reduce(const SparseVector& v) const {
    std::vector<SparseEntry> raw = v.entries;
    bool touched = false;
    for (size_t k = 0; k < pivots_.size(); ++k) {
        const GR* hit = v.find(pivots_[k]);
        if (!hit) continue;
        touched = true;
        for (const auto& e : vectors_[k].entries) raw.push_back({e.index, -*hit * e.value});
    }
    if (!touched) return v;
    return SparseVector::from_unsorted(std::move(raw));
}

std::optional<std::vector<GR>> SubspaceBasis::coordinates(const SparseVector& v) const {
    if (!reduce(v).empty()) return std::nullopt;
    std::vector<GR> out(pivots_.size());
    for (size_t k = 0; k < pivots_.size(); ++k) out[k] = v.at(pivots_[k]);
    return out;
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
    return std::all_of(other.vectors_.begin(), other.vectors_.end(),
                       [&](const SparseVector& v) { return contains(v); });
}

bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.vectors_ == b.vectors_;
}

SubspaceBasis kernel_basis(const SparseMatrix& m) {
    EchelonBuilder eb(m.cols());
    for (const auto& r : m.row_data()) eb.insert(r);
    SubspaceBasis rref = eb.finish();
    const size_t n = m.cols();
    std::vector<char> is_pivot(n, 0);
    for (uint32_t p : rref.pivots()) is_pivot[p] = 1;
    // Column-wise view of the non-pivot entries of the RREF rows.
    std::vector<std::vector<SparseEntry>> by_free(n);
    for (size_t k = 0; k < rref.dim(); ++k) {
        const uint32_t p = rref.pivots()[k];
        for (const auto& e : rref.vectors()[k].entries) {
            if (!is_pivot[e.index]) by_free[e.index].push_back({p, -e.value});
        }
    }
    std::vector<SparseVector> kernel;
    for (uint32_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<SparseEntry> raw = std::move(by_free[f]);
        raw.push_back({f, GR(1)});
        kernel.push_back(SparseVector::from_unsorted(std::move(raw)));
    }
    return SubspaceBasis::span(n, kernel);
}

SubspaceBasis image_basis(const SparseMatrix& m) {
    SparseMatrix t = m.transpose();
    return SubspaceBasis::span(m.rows(), t.row_data());
}

SubspaceBasis quotient_representatives(const SubspaceBasis& closed, const SubspaceBasis& exact) {
    if (closed.ambient_dim() != exact.ambient_dim())
        throw NotASubspace("quotient_representatives: ambient dimensions differ");
    if (!closed.contains(exact))
        throw NotASubspace("quotient_representatives: exact subspace is not contained in closed subspace");
    std::vector<SparseVector> reduced;
    reduced.reserve(closed.dim());
    for (const auto& v : closed.vectors()) {
        SparseVector r = exact.reduce(v);
        if (!r.empty()) reduced.push_back(std::move(r));
    }
    SubspaceBasis reps = SubspaceBasis::span(closed.ambient_dim(), reduced);
    if (reps.dim() + exact.dim() != closed.dim())
        throw NotASubspace("quotient_representatives: dimension count mismatch");
    return reps;
}

QuotientSpace::QuotientSpace(SubspaceBasis closed, SubspaceBasis exact)
    : closed_(std::move(closed)), exact_(std::move(exact)), reps_(quotient_representatives(closed_, exact_)) {}

std::vector<GR> QuotientSpace::class_of(const SparseVector& v) const {
    SparseVector r = exact_.reduce(v);
    auto coords = reps_.coordinates(r);
    if (!coords) throw NotASubspace("QuotientSpace::class_of: vector is not in the closed subspace");
    return *coords;
}

// ------------------------------------------------------------------ solve

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
    const size_t n = m.cols();
    EchelonBuilder eb(n + 1);
    std::vector<std::vector<SparseEntry>> extra(m.rows());
    for (const auto& e : b.entries) {
        if (e.index >= m.rows()) throw std::out_of_range("solve: right-hand side exceeds row count");
        extra[e.index].push_back({static_cast<uint32_t>(n), e.value});
    }
    for (size_t r = 0; r < m.rows(); ++r) {
        SparseVector row = m.row(r);
        for (auto& e : extra[r]) row.entries.push_back(e);
        eb.insert(row);
    }
    SubspaceBasis rref = eb.finish();
    SparseVector x;
    for (size_t k = 0; k < rref.dim(); ++k) {
        const uint32_t p = rref.pivots()[k];
        if (p == n) return std::nullopt;
        GR val = rref.vectors()[k].at(static_cast<uint32_t>(n));
        if (!val.is_zero()) x.entries.push_back({p, std::move(val)});
    }
    return x;
}

}  // namespace ncgeo
