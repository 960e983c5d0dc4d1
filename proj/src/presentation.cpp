#include "twistloop/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "twistloop/errors.hpp"

namespace twistloop {

namespace {

Int iabs(const Int& a) { return a < 0 ? Int(-a) : a; }

IntMatrix identity(std::size_t n) {
    IntMatrix I(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
    const std::size_t r = A.size();
    const std::size_t m = r ? A[0].size() : 0;
    const std::size_t c = B.empty() ? 0 : B[0].size();
    IntMatrix C(r, std::vector<Int>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (A[i][k] == 0) continue;
            for (std::size_t j = 0; j < c; ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

// Rounded quotient: minimizes |a - q*b|.
Int rounded_div(const Int& a, const Int& b) {
    Int q = a / b;
    const Int r = a - q * b;
    if (2 * iabs(r) > iabs(b)) q += (a < 0) == (b < 0) ? 1 : -1;
    return q;
}

void verify(const IntMatrix& R, const SNFResult& s) {
    const IntMatrix lhs = multiply(multiply(s.U, R), s.V);
    if (lhs != s.D) throw Error("smith_normal_form: U*R*V != D");
    if (!s.U.empty() && iabs(det_exact(s.U)) != 1)
        throw Error("smith_normal_form: U not unimodular");
    if (!s.V.empty() && iabs(det_exact(s.V)) != 1)
        throw Error("smith_normal_form: V not unimodular");
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
        if (s.invariant_factors[i + 1] % s.invariant_factors[i] != 0)
            throw Error("smith_normal_form: divisibility chain broken");
}

} // namespace

Int det_exact(const IntMatrix& A) {
    const std::size_t n = A.size();
    if (n == 0) return 1;
    IntMatrix M = A;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && M[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(M[k], M[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]);
}

SNFResult smith_normal_form(const IntMatrix& R) {
    const std::size_t rows = R.size();
    const std::size_t cols = rows ? R[0].size() : 0;
    for (const auto& row : R)
        if (row.size() != cols)
            throw Error("smith_normal_form: ragged matrix");

    SNFResult out;
    out.D = R;
    out.U = identity(rows);
    out.V = identity(cols);
    IntMatrix& D = out.D;
    IntMatrix& U = out.U;
    IntMatrix& V = out.V;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(D[a], D[b]);
        std::swap(U[a], U[b]);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : D) std::swap(row[a], row[b]);
        for (auto& row : V) std::swap(row[a], row[b]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t j = 0; j < cols; ++j) D[dst][j] += c * D[src][j];
        for (std::size_t j = 0; j < rows; ++j) U[dst][j] += c * U[src][j];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t i = 0; i < rows; ++i) D[i][dst] += c * D[i][src];
        for (std::size_t i = 0; i < cols; ++i) V[i][dst] += c * V[i][src];
    };

    const std::size_t lim = std::min(rows, cols);
    for (std::size_t k = 0; k < lim; ++k) {
        // Pivot: smallest nonzero |entry| in the trailing block.
        std::size_t pi = k, pj = k;
        Int best = 0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j)
                if (D[i][j] != 0 &&
                    (best == 0 || iabs(D[i][j]) < best)) {
                    best = iabs(D[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        if (pi != k) swap_rows(k, pi);
        if (pj != k) swap_cols(k, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = k + 1; i < rows; ++i)
                if (D[i][k] != 0) {
                    add_row(i, k, -rounded_div(D[i][k], D[k][k]));
                    if (D[i][k] != 0) {
                        swap_rows(k, i);
                        clean = false;
                    }
                }
            for (std::size_t j = k + 1; j < cols; ++j)
                if (D[k][j] != 0) {
                    add_col(j, k, -rounded_div(D[k][j], D[k][k]));
                    if (D[k][j] != 0) {
                        swap_cols(k, j);
                        clean = false;
                    }
                }
        }
        // Enforce divisibility of the trailing block by the pivot.
        bool redo = false;
        for (std::size_t i = k + 1; i < rows && !redo; ++i)
            for (std::size_t j = k + 1; j < cols && !redo; ++j)
                if (D[i][j] % D[k][k] != 0) {
                    add_row(k, i, 1);
                    redo = true;
                }
        if (redo) {
            --k;
            continue;
        }
        if (D[k][k] < 0) {
            for (std::size_t j = 0; j < cols; ++j) D[k][j] = -D[k][j];
            for (std::size_t j = 0; j < rows; ++j) U[k][j] = -U[k][j];
        }
    }

    for (std::size_t k = 0; k < lim; ++k)
        if (D[k][k] != 0) out.invariant_factors.push_back(D[k][k]);
    out.free_rank = int(cols) - int(out.invariant_factors.size());
    verify(R, out);
    return out;
}

AbelianPresentation build_M0_presentation(const std::vector<Int>& n,
                                          const std::vector<int>& signs) {
    if (n.empty())
        throw EmptyGeneratorList("build_M0_presentation: empty n list");
    if (signs.size() != n.size())
        throw Error("build_M0_presentation: signs/n length mismatch");
    for (int s : signs)
        if (s != 1 && s != -1)
            throw Error("build_M0_presentation: signs must be +-1");

    const std::size_t m = n.size();
    AbelianPresentation p;
    for (std::size_t i = 0; i < m; ++i) {
        std::ostringstream os;
        os << "g" << (i + 1);
        p.generators.push_back(os.str());
    }
    // 2 g_1 = 0.
    p.relations.emplace_back(m, 0);
    p.relations.back()[0] = 2;
    // g_i + sign_i * n_i * g_1 = 0.
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Int> row(m, 0);
        row[i] += 1;
        row[0] += Int(signs[i]) * n[i];
        p.relations.push_back(std::move(row));
    }
    return p;
}

std::string conclude_theorem(const AbelianPresentation& p) {
    if (p.generators.empty())
        throw EmptyGeneratorList("conclude_theorem: no generators");
    const SNFResult s = smith_normal_form(p.relations);
    if (s.free_rank > 0) {
        std::ostringstream os;
        os << "conclude_theorem: free rank " << s.free_rank
           << " (group is infinite)";
        throw TheoremViolated(os.str());
    }
    for (const Int& d : s.invariant_factors)
        if (2 % d != 0) {
            std::ostringstream os;
            os << "conclude_theorem: invariant factor " << d
               << " does not divide 2";
            throw TheoremViolated(os.str());
        }
    return "quotient of Z/2";
}

} // namespace twistloop
