#include "hermlag/hermitian.hpp"

#include "hermlag/errors.hpp"
#include "memo.hpp"

namespace hermlag {

HermCoords::HermCoords(int n) : n_(n) {
    if (n < 1 || n * n > kMaxVars) throw DimensionError("HermCoords supports ranks 1..4");
}

int HermCoords::t(int i) const {
    if (i < 0 || i >= n_) throw IndexError("diagonal index out of range");
    return i;
}

int HermCoords::u(int i, int j) const {
    if (i < 0 || j >= n_ || i >= j) throw IndexError("off-diagonal coordinate requires i < j");
    // Pairs (i, j), i < j, in row-major order, two variables each.
    int pair = 0;
    for (int r = 0; r < i; ++r) pair += n_ - 1 - r;
    pair += j - i - 1;
    return n_ + 2 * pair;
}

int HermCoords::v(int i, int j) const { return u(i, j) + 1; }

MultiPoly HermCoords::entry(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw IndexError("entry index out of range");
    const int N = size();
    if (i == j) return MultiPoly::variable(N, t(i));
    const int a = std::min(i, j), b = std::max(i, j);
    MultiPoly p = MultiPoly::variable(N, u(a, b));
    const GaussRational im = i < j ? GaussRational::i() : -GaussRational::i();
    p += MultiPoly::variable(N, v(a, b)) * im;
    return p;
}

MultiPoly HermCoords::trace() const {
    MultiPoly p(size());
    for (int i = 0; i < n_; ++i) p += MultiPoly::variable(size(), t(i));
    return p;
}

std::vector<double> HermCoords::coords_of(const CMatrix& s) const {
    if (s.rows() != n_ || s.cols() != n_) throw DimensionError("matrix rank does not match coordinates");
    std::vector<double> x(size());
    for (int i = 0; i < n_; ++i) x[t(i)] = s(i, i).real();
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            x[u(i, j)] = s(i, j).real();
            x[v(i, j)] = s(i, j).imag();
        }
    return x;
}

std::vector<GaussRational> HermCoords::coords_of_exact(const std::vector<GaussRational>& row_major) const {
    if (static_cast<int>(row_major.size()) != size()) throw DimensionError("matrix size does not match coordinates");
    std::vector<GaussRational> x(size());
    for (int i = 0; i < n_; ++i) x[t(i)] = GaussRational(row_major[i * n_ + i].re());
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            x[u(i, j)] = GaussRational(row_major[i * n_ + j].re());
            x[v(i, j)] = GaussRational(row_major[i * n_ + j].im());
        }
    return x;
}

CMatrix HermCoords::matrix_of(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != size()) throw DimensionError("coordinate count mismatch");
    CMatrix s(n_, n_);
    for (int i = 0; i < n_; ++i) s(i, i) = x[t(i)];
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) {
            s(i, j) = {x[u(i, j)], x[v(i, j)]};
            s(j, i) = std::conj(s(i, j));
        }
    return s;
}

std::vector<int> HermCoords::diagonal_restriction() const {
    std::vector<int> map(size(), -1);
    for (int i = 0; i < n_; ++i) map[t(i)] = i;
    return map;
}

HermMatrix::HermMatrix(CMatrix s) : s_(std::move(s)) {
    if (s_.rows() != s_.cols()) throw DimensionError("HermMatrix must be square");
    const double scale = std::max(1.0, s_.norm());
    if ((s_ - s_.adjoint()).norm() > 1e-12 * scale) throw NotHermitianError("matrix is not Hermitian");
}

HermMatrix HermMatrix::diagonal(const std::vector<double>& d) {
    CMatrix s = CMatrix::Zero(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s(i, i) = d[i];
    return HermMatrix(std::move(s));
}

Eigen::VectorXd HermMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

MultiPoly powersum_poly(int k, int n) {
    static detail::Memo<std::pair<int, int>, MultiPoly> memo;
    if (k < 0) throw DomainError("powersum_poly requires k >= 0");
    return memo.get({k, n}, [&] {
        const HermCoords c(n);
        if (k == 0) return c.constant(GaussRational(n));
        std::vector<MultiPoly> s(n * n), power(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s[i * n + j] = power[i * n + j] = c.entry(i, j);
        for (int step = 1; step < k; ++step) {
            std::vector<MultiPoly> next(n * n, MultiPoly(c.size()));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int l = 0; l < n; ++l) next[i * n + j].add_product(power[i * n + l], s[l * n + j]);
            power = std::move(next);
        }
        MultiPoly tr(c.size());
        for (int i = 0; i < n; ++i) tr += power[i * n + i];
        return tr;
    });
}

MultiPoly spherical_poly(const Partition& m, int n) {
    static detail::Memo<std::pair<Partition, int>, MultiPoly> memo;
    const Partition key = m.padded(n);
    return memo.get({key, n}, [&] {
        const HermCoords c(n);
        MultiPoly out(c.size());
        for (const auto& [mu, coef] : schur_in_powersums(key)) {
            MultiPoly term = c.constant(GaussRational(1));
            for (int part : mu.parts()) term = term * powersum_poly(part, n);
            out += term * GaussRational(coef);
        }
        return out * GaussRational(Rational(1) / schur_dim(key, n));
    });
}

std::complex<double> eval_poly(const MultiPoly& p, const HermMatrix& s) {
    const int n = s.rank();
    if (p.nvars() != n * n) throw DimensionError("eval_poly: polynomial is not over Herm(" + std::to_string(n) + ")");
    const auto x = HermCoords(n).coords_of(s.matrix());
    return p.evaluate(std::span<const double>(x));
}

double eval_spherical_eig(const Partition& m, const std::vector<double>& eigs) {
    const int n = static_cast<int>(eigs.size());
    const Partition l = m.padded(n);
    const int top = l.weight();
    // Complete homogeneous symmetric polynomials h_0..h_top by the recursion
    // h_k(x_1..x_i) = h_k(x_1..x_{i-1}) + x_i h_{k-1}(x_1..x_i).
    std::vector<double> h(top + 1, 0.0);
    h[0] = 1.0;
    for (double x : eigs)
        for (int k = 1; k <= top; ++k) h[k] += x * h[k - 1];
    const int len = std::max(1, l.nonzero_length());
    Eigen::MatrixXd jt(len, len);
    for (int i = 0; i < len; ++i)
        for (int j = 0; j < len; ++j) {
            const int idx = l[i] - i + j;
            jt(i, j) = (idx < 0 || idx > top) ? 0.0 : h[idx];
        }
    return jt.determinant() / schur_dim(l, n).get_d();
}

}  // namespace hermlag
