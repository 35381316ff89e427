#include "circa/linalg.hpp"

#include <utility>

#include "circa/errors.hpp"

namespace circa {

namespace {

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

struct Echelon {
    RatMatrix m;                    // integer-scaled, forward-eliminated
    std::vector<Index> pivot_cols;  // pivot column of pivot row i
    int swap_parity = 1;
    Rational scale_product{1};  // product of the per-row integer scales
};

// Fraction-free forward elimination (Bareiss). Rows are scaled to integer
// entries first; every later division is exact, so intermediate entries stay
// integral. Pivot selection is first nonzero from the top, so the result is
// deterministic. Pivots are only taken in columns < pivot_col_limit.
Echelon echelonize(RatMatrix m, Index pivot_col_limit) {
    const Index rows = m.rows();
    const Index cols = m.cols();
    Echelon e;
    for (Index i = 0; i < rows; ++i) {
        Int l = 1;
        for (Index j = 0; j < cols; ++j) {
            l = lcm(l, denominator(m(i, j)));
        }
        if (l != 1) {
            const Rational s(l);
            for (Index j = 0; j < cols; ++j) {
                m(i, j) *= s;
            }
            e.scale_product *= s;
        }
    }

    Rational prev(1);
    Index r = 0;
    for (Index c = 0; c < pivot_col_limit && r < rows; ++c) {
        Index p = -1;
        for (Index i = r; i < rows; ++i) {
            if (m(i, c) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) {
            continue;
        }
        if (p != r) {
            m.row(p).swap(m.row(r));
            e.swap_parity = -e.swap_parity;
        }
        for (Index i = r + 1; i < rows; ++i) {
            for (Index j = c + 1; j < cols; ++j) {
                m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            }
            m(i, c) = 0;
        }
        prev = m(r, c);
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.m = std::move(m);
    return e;
}

}  // namespace

RatVector make_vector(std::initializer_list<long> entries) {
    RatVector v(static_cast<Index>(entries.size()));
    Index i = 0;
    for (long x : entries) {
        v(i++) = Rational(x);
    }
    return v;
}

RatMatrix make_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    const Index r = static_cast<Index>(rows.size());
    Index c = 0;
    for (const auto& row : rows) {
        c = static_cast<Index>(row.size());
        break;
    }
    RatMatrix m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != c) {
            throw DimensionError("make_matrix: ragged rows");
        }
        Index j = 0;
        for (long x : row) {
            m(i, j++) = Rational(x);
        }
        ++i;
    }
    return m;
}

Index rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return 0;
    }
    return static_cast<Index>(echelonize(m, m.cols()).pivot_cols.size());
}

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    const Index cols = m.cols();
    if (cols == 0) {
        return {};
    }
    if (m.rows() == 0) {
        // Kernel is the whole space; the standard basis works.
        std::vector<RatVector> basis;
        for (Index j = 0; j < cols; ++j) {
            RatVector v = RatVector::Zero(cols);
            v(j) = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }

    const Echelon e = echelonize(m, cols);
    const Index nr = static_cast<Index>(e.pivot_cols.size());
    std::vector<bool> is_pivot(cols, false);
    for (Index c : e.pivot_cols) {
        is_pivot[static_cast<std::size_t>(c)] = true;
    }

    std::vector<RatVector> basis;
    for (Index f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) {
            continue;
        }
        RatVector v = RatVector::Zero(cols);
        v(f) = 1;
        for (Index i = nr - 1; i >= 0; --i) {
            const Index pc = e.pivot_cols[static_cast<std::size_t>(i)];
            Rational sum(0);
            for (Index j = pc + 1; j < cols; ++j) {
                if (v(j) != 0) {
                    sum += e.m(i, j) * v(j);
                }
            }
            v(pc) = -sum / e.m(i, pc);
        }
        basis.push_back(canonical_direction(v));
    }
    return basis;
}

Rational determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("determinant: matrix is not square");
    }
    const Index n = m.rows();
    if (n == 0) {
        return Rational(1);
    }
    const Echelon e = echelonize(m, n);
    if (static_cast<Index>(e.pivot_cols.size()) < n) {
        return Rational(0);
    }
    // For a full-rank square matrix the final Bareiss pivot is the
    // determinant of the scaled matrix, up to the row-swap sign.
    Rational det = e.m(n - 1, n - 1);
    if (e.swap_parity < 0) {
        det = -det;
    }
    return det / e.scale_product;
}

std::optional<RatVector> try_solve_square(const RatMatrix& m, const RatVector& rhs) {
    if (m.rows() != m.cols()) {
        throw DimensionError("solve_square: matrix is not square");
    }
    if (rhs.size() != m.rows()) {
        throw DimensionError("solve_square: rhs size mismatch");
    }
    const Index n = m.rows();
    if (n == 0) {
        return RatVector(0);
    }
    RatMatrix aug(n, n + 1);
    aug.leftCols(n) = m;
    aug.col(n) = rhs;
    const Echelon e = echelonize(std::move(aug), n);
    if (static_cast<Index>(e.pivot_cols.size()) < n) {
        return std::nullopt;
    }
    RatVector x(n);
    for (Index i = n - 1; i >= 0; --i) {
        Rational sum = e.m(i, n);
        for (Index j = i + 1; j < n; ++j) {
            sum -= e.m(i, j) * x(j);
        }
        x(i) = sum / e.m(i, i);
    }
    return x;
}

RatVector solve_square(const RatMatrix& m, const RatVector& rhs) {
    auto x = try_solve_square(m, rhs);
    if (!x) {
        throw SingularMatrixError("solve_square: singular matrix");
    }
    return *std::move(x);
}

Rational norm1(const RatVector& v) {
    Rational s(0);
    for (Index i = 0; i < v.size(); ++i) {
        s += abs(v(i));
    }
    return s;
}

bool is_zero(const RatVector& v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (v(i) != 0) {
            return false;
        }
    }
    return true;
}

bool is_integral(const RatVector& v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (!is_integer(v(i))) {
            return false;
        }
    }
    return true;
}

bool is_integral(const RatMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (!is_integer(m(i, j))) {
                return false;
            }
        }
    }
    return true;
}

RatVector to_coprime_integer(const RatVector& v) {
    if (is_zero(v)) {
        throw PreconditionError("to_coprime_integer: zero vector");
    }
    Int l = 1;
    for (Index i = 0; i < v.size(); ++i) {
        l = lcm(l, denominator(v(i)));
    }
    Int g = 0;
    for (Index i = 0; i < v.size(); ++i) {
        g = gcd(g, numerator(v(i)) * (l / denominator(v(i))));
    }
    return v * rat(l, g);
}

RatVector canonical_direction(const RatVector& v) {
    RatVector w = to_coprime_integer(v);
    for (Index i = 0; i < w.size(); ++i) {
        if (w(i) != 0) {
            if (w(i) < 0) {
                w = -w;
            }
            break;
        }
    }
    return w;
}

bool lex_less(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) {
            return a(i) < b(i);
        }
    }
    return false;
}

RatMatrix stack_rows(const RatMatrix& top, const RatMatrix& bottom) {
    if (top.rows() == 0) {
        return bottom;
    }
    if (bottom.rows() == 0) {
        return top;
    }
    if (top.cols() != bottom.cols()) {
        throw DimensionError("stack_rows: column count mismatch");
    }
    RatMatrix m(top.rows() + bottom.rows(), top.cols());
    m.topRows(top.rows()) = top;
    m.bottomRows(bottom.rows()) = bottom;
    return m;
}

RatMatrix select_rows(const RatMatrix& m, const std::vector<Index>& rows) {
    RatMatrix out(static_cast<Index>(rows.size()), m.cols());
    Index i = 0;
    for (Index r : rows) {
        out.row(i++) = m.row(r);
    }
    return out;
}

RatVector select_entries(const RatVector& v, const std::vector<Index>& rows) {
    RatVector out(static_cast<Index>(rows.size()));
    Index i = 0;
    for (Index r : rows) {
        out(i++) = v(r);
    }
    return out;
}

void for_each_subset(Index n, Index k, const std::function<void(const std::vector<Index>&)>& fn) {
    if (k < 0 || k > n) {
        return;
    }
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) {
        idx[static_cast<std::size_t>(i)] = i;
    }
    while (true) {
        fn(idx);
        Index i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace circa
