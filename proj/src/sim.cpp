#include "wscov/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include <lapacke.h>
#include <cblas.h>

#include "wscov/errors.hpp"

namespace wscov {

namespace {

using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

lapack_int as_lapack(std::size_t v) {
    if (v > static_cast<std::size_t>(std::numeric_limits<lapack_int>::max())) {
        throw std::invalid_argument("sim: matrix dimension too large");
    }
    return static_cast<lapack_int>(v);
}

template <class Matrix>
[[noreturn]] void eigen_failure(const char* routine, lapack_int info, const Matrix& gram) {
    std::ostringstream os;
    os << routine << " failed (info = " << info << ") on a " << gram.rows() << " x " << gram.cols()
       << " Gram matrix; trace = " << std::real(gram.trace()) << ", max |entry| = " << gram.cwiseAbs().maxCoeff();
    throw EigensolverError(os.str());
}

template <class Matrix>
void check_finite(const Matrix& gram) {
    if (!gram.allFinite()) {
        std::ostringstream os;
        os << "sim: non-finite entry in " << gram.rows() << " x " << gram.cols() << " Gram matrix";
        throw EigensolverError(os.str());
    }
}

void fill_real(RealMatrix& z, const NoiseModel& noise, std::mt19937_64& rng) {
    double* p = z.data();
    const auto size = static_cast<std::size_t>(z.size());
    if (noise.kind == NoiseModel::Kind::student_t) {
        std::student_t_distribution<double> t(noise.nu);
        const double scale = std::sqrt((noise.nu - 2.0) / noise.nu);
        for (std::size_t i = 0; i < size; ++i) p[i] = scale * t(rng);
    } else {
        std::normal_distribution<double> g(0.0, 1.0);
        for (std::size_t i = 0; i < size; ++i) p[i] = g(rng);
    }
}

// Haar-distributed orthogonal matrix: Q from QR of a Gaussian matrix, with
// column signs fixed by diag(R).
RealMatrix haar_orthogonal(std::size_t dim, std::mt19937_64& rng) {
    RealMatrix a(dim, dim);
    std::normal_distribution<double> g(0.0, 1.0);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
    const lapack_int m = as_lapack(dim);
    std::vector<double> tau(dim);
    lapack_int info = LAPACKE_dgeqrf(LAPACK_COL_MAJOR, m, m, a.data(), m, tau.data());
    if (info != 0) eigen_failure("dgeqrf", info, a);
    std::vector<double> sign(dim);
    for (std::size_t j = 0; j < dim; ++j) sign[j] = a(j, j) < 0.0 ? -1.0 : 1.0;
    info = LAPACKE_dorgqr(LAPACK_COL_MAJOR, m, m, m, a.data(), m, tau.data());
    if (info != 0) eigen_failure("dorgqr", info, a);
    for (std::size_t j = 0; j < dim; ++j) {
        if (sign[j] < 0.0) a.col(j) *= -1.0;
    }
    return a;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix out(a.rows(), b.cols());
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, as_lapack(a.rows()), as_lapack(b.cols()),
                as_lapack(a.cols()), 1.0, a.data(), as_lapack(a.rows()), b.data(), as_lapack(b.rows()), 0.0,
                out.data(), as_lapack(out.rows()));
    return out;
}

// X = T^{1/2} Z W^{1/2}, possibly with the rotations, applied to one real
// component of Z.
void shape(RealMatrix& x, const std::vector<double>& t_sqrt, const std::vector<double>& w_sqrt,
           const RealMatrix* q_weights, const RealMatrix* t_half) {
    if (q_weights) x = multiply(x, *q_weights);
    if (t_half) {
        x = multiply(*t_half, x);
    } else {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) *= t_sqrt[i];
        }
    }
    for (Eigen::Index j = 0; j < x.cols(); ++j) x.col(j) *= w_sqrt[j];
}

std::vector<double> real_gram_eigenvalues(const RealMatrix& x, bool companion, double inv_n) {
    const Eigen::Index dim = companion ? x.cols() : x.rows();
    const Eigen::Index inner = companion ? x.rows() : x.cols();
    RealMatrix gram = RealMatrix::Zero(dim, dim);
    cblas_dsyrk(CblasColMajor, CblasLower, companion ? CblasTrans : CblasNoTrans, as_lapack(dim), as_lapack(inner),
                inv_n, x.data(), as_lapack(x.rows()), 0.0, gram.data(), as_lapack(dim));
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    check_finite(gram);
    std::vector<double> w(dim);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', as_lapack(dim), gram.data(), as_lapack(dim),
                                           w.data());
    if (info != 0) eigen_failure("dsyevd", info, gram);
    return w;
}

std::vector<double> complex_gram_eigenvalues(const ComplexMatrix& x, bool companion, double inv_n) {
    const Eigen::Index dim = companion ? x.cols() : x.rows();
    const Eigen::Index inner = companion ? x.rows() : x.cols();
    ComplexMatrix gram = ComplexMatrix::Zero(dim, dim);
    cblas_zherk(CblasColMajor, CblasLower, companion ? CblasConjTrans : CblasNoTrans, as_lapack(dim),
                as_lapack(inner), inv_n, x.data(), as_lapack(x.rows()), 0.0, gram.data(), as_lapack(dim));
    gram.triangularView<Eigen::StrictlyUpper>() = gram.adjoint();
    check_finite(gram);
    std::vector<double> w(dim);
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', as_lapack(dim),
                                           reinterpret_cast<lapack_complex_double*>(gram.data()), as_lapack(dim),
                                           w.data());
    if (info != 0) eigen_failure("zheevd", info, gram);
    return w;
}

}  // namespace

NoiseModel NoiseModel::student_t(double nu) {
    if (!(nu > 2.0) || !std::isfinite(nu)) throw std::invalid_argument("NoiseModel: Student t needs nu > 2");
    return {Kind::student_t, nu};
}

NoiseModel parse_noise(std::string_view text) {
    if (text == "gauss-r") return NoiseModel::gaussian_real();
    if (text == "gauss-c") return NoiseModel::gaussian_complex();
    constexpr std::string_view prefix = "student:";
    if (text.starts_with(prefix)) {
        const std::string body(text.substr(prefix.size()));
        std::size_t used = 0;
        double nu = 0.0;
        try {
            nu = std::stod(body, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != body.size()) throw LawParseError("noise: bad degrees of freedom '" + body + "'");
        try {
            return NoiseModel::student_t(nu);
        } catch (const std::invalid_argument& e) {
            throw LawParseError(e.what());
        }
    }
    throw LawParseError("noise: expected gauss-r, gauss-c or student:NU, got '" + std::string(text) + "'");
}

std::string format_noise(const NoiseModel& noise) {
    switch (noise.kind) {
        case NoiseModel::Kind::gaussian_real: return "gauss-r";
        case NoiseModel::Kind::gaussian_complex: return "gauss-c";
        case NoiseModel::Kind::student_t: {
            std::ostringstream os;
            os.precision(17);
            os << "student:" << noise.nu;
            return os.str();
        }
    }
    return {};
}

std::size_t SimConfig::sample_count() const {
    if (!(c > 0.0) || !std::isfinite(c)) return 0;
    const double ratio = static_cast<double>(n) / c;
    if (!(ratio < 1e15)) return 0;
    return static_cast<std::size_t>(std::llround(ratio));
}

void SimConfig::validate() const {
    if (n < 2) throw std::invalid_argument("SimConfig: n must be >= 2");
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("SimConfig: c must be > 0");
    if (sample_count() < 2) throw std::invalid_argument("SimConfig: N = round(n / c) must be >= 2");
    if (noise.kind == NoiseModel::Kind::student_t && !(noise.nu > 2.0)) {
        throw std::invalid_argument("SimConfig: Student t needs nu > 2");
    }
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ (trial * 0xd1b54a32d192ed03ULL));
}

EmpiricalSpectrum sample_spectrum(const SpectralLaw& H, const WeightLaw& D, const SimConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n;
    const std::size_t N = cfg.sample_count();

    std::vector<double> t_sqrt = population_diagonal(H, n);
    for (double& v : t_sqrt) v = std::sqrt(v);
    std::vector<double> w_sqrt = sample_diagonal(D, N);
    for (double& v : w_sqrt) v = std::sqrt(v);

    std::mt19937_64 rng(cfg.seed);
    RealMatrix re(n, N);
    RealMatrix im;
    if (cfg.noise.is_complex()) {
        im.resize(n, N);
        std::normal_distribution<double> g(0.0, 1.0);
        const double s = std::sqrt(0.5);
        for (Eigen::Index j = 0; j < re.cols(); ++j) {
            for (Eigen::Index i = 0; i < re.rows(); ++i) {
                re(i, j) = s * g(rng);
                im(i, j) = s * g(rng);
            }
        }
    } else {
        fill_real(re, cfg.noise, rng);
    }

    RealMatrix q_weights;
    if (cfg.rotate_weights) q_weights = haar_orthogonal(N, rng);
    RealMatrix t_half;
    if (cfg.rotate_population) {
        const RealMatrix q = haar_orthogonal(n, rng);
        RealMatrix scaled = q;
        for (std::size_t j = 0; j < n; ++j) scaled.col(j) *= t_sqrt[j];
        t_half = scaled * q.transpose();
    }
    const RealMatrix* qw = cfg.rotate_weights ? &q_weights : nullptr;
    const RealMatrix* th = cfg.rotate_population ? &t_half : nullptr;

    const bool companion = n > N;
    const double inv_n = 1.0 / static_cast<double>(N);
    std::vector<double> eig;
    shape(re, t_sqrt, w_sqrt, qw, th);
    if (cfg.noise.is_complex()) {
        shape(im, t_sqrt, w_sqrt, qw, th);
        ComplexMatrix x(n, N);
        x.real() = re;
        x.imag() = im;
        re.resize(0, 0);
        im.resize(0, 0);
        eig = complex_gram_eigenvalues(x, companion, inv_n);
    } else {
        eig = real_gram_eigenvalues(re, companion, inv_n);
    }

    EmpiricalSpectrum out;
    out.n = n;
    out.N = N;
    out.eigenvalues = std::move(eig);
    out.eigenvalues.resize(n, 0.0);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

std::vector<EmpiricalSpectrum> sample_ensemble(const SpectralLaw& H, const WeightLaw& D, const SimConfig& cfg,
                                               std::size_t trials, unsigned threads) {
    cfg.validate();
    std::vector<EmpiricalSpectrum> out(trials);
    std::vector<std::exception_ptr> errors(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
            SimConfig local = cfg;
            local.seed = trial_seed(cfg.seed, t);
            try {
                out[t] = sample_spectrum(H, D, local);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const unsigned pool = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
    if (pool == 1) {
        worker();
    } else {
        std::vector<std::jthread> workers;
        for (unsigned k = 0; k < pool; ++k) workers.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

namespace {

std::vector<double> cleaned(const EmpiricalSpectrum& spec) {
    std::vector<double> v = spec.eigenvalues;
    std::sort(v.begin(), v.end());
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    const double floor = 1e-10 * scale;
    for (double& x : v) {
        if (std::abs(x) <= floor) x = 0.0;
    }
    return v;
}

}  // namespace

double ks_statistic(const EmpiricalSpectrum& spec, const std::function<double(double)>& cdf) {
    if (spec.eigenvalues.empty()) throw std::invalid_argument("ks_statistic: empty spectrum");
    const std::vector<double> v = cleaned(spec);
    const double n = static_cast<double>(v.size());
    double worst = 0.0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        const double x = v[i];
        const double below = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
        const double at = cdf(x);
        worst = std::max(worst, std::abs(static_cast<double>(i) / n - below));
        worst = std::max(worst, std::abs(static_cast<double>(j) / n - at));
        i = j;
    }
    return std::min(worst, 1.0);
}

double wasserstein1(const EmpiricalSpectrum& spec, const DensityCurve& curve) {
    if (spec.eigenvalues.empty()) throw std::invalid_argument("wasserstein1: empty spectrum");
    const std::vector<double> v = cleaned(spec);
    const CdfTable F(curve);

    std::vector<double> grid = curve.xs;
    grid.insert(grid.end(), v.begin(), v.end());
    grid.push_back(0.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const double n = static_cast<double>(v.size());
    double acc = 0.0;
    std::size_t below = 0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double a = grid[k];
        const double b = grid[k + 1];
        while (below < v.size() && v[below] <= a) ++below;
        const double fn = static_cast<double>(below) / n;
        acc += 0.5 * (b - a) * (std::abs(fn - F(a)) + std::abs(fn - F(b)));
    }
    return acc;
}

double trace_mean(const EmpiricalSpectrum& spec) {
    if (spec.eigenvalues.empty()) throw std::invalid_argument("trace_mean: empty spectrum");
    double s = 0.0;
    for (double x : spec.eigenvalues) s += x;
    return s / static_cast<double>(spec.eigenvalues.size());
}

}  // namespace wscov
