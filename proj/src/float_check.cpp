#include <complex>

#include <Eigen/Dense>

#include "blowup/campaign.hpp"
#include "rng.hpp"

namespace blowup {

namespace {

using Complex = std::complex<double>;

Complex to_complex(const GaussianRational& x) { return {x.re().get_d(), x.im().get_d()}; }

}  // namespace

FloatAgreement cross_check_float(const CanonicalForm& p, const CanonicalForm& pprime, const TruncationParams& params,
                                 double threshold, std::uint64_t seed) {
    const TruncationParams window = params.normalized(p.level());
    const GaugeSystem sys = assemble_necessity_system(p, pprime, window);
    const QuadraticForm q = sys.layout.determinant_form();

    FloatAgreement out;
    const std::vector<SparseVector> exact = nullspace(sys.matrix);
    out.exact_nullity = exact.size();
    out.exact_vanishes = quadratic_vanishes_on_span(q, exact).vanishes;

    const auto n = static_cast<Eigen::Index>(sys.layout.size());
    const auto m = static_cast<Eigen::Index>(std::max<std::size_t>(sys.matrix.rows(), 1));
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, n);
    for (std::size_t r = 0; r < sys.matrix.rows(); ++r) {
        for (const auto& e : sys.matrix.row(r))
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e.col)) = to_complex(e.value);
        const double norm = a.row(static_cast<Eigen::Index>(r)).norm();
        if (norm > 0)
            a.row(static_cast<Eigen::Index>(r)) /= norm;
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cutoff = threshold * std::max(sigma.size() > 0 ? sigma(0) : 0.0, 1.0);
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        if (sigma(k) > cutoff)
            ++rank;
    out.float_nullity = static_cast<std::size_t>(n - rank);

    // Random unit vectors of the float nullspace, probed at the four
    // coordinates the determinant form reads.
    const Eigen::MatrixXcd kernel = svd.matrixV().rightCols(n - rank);
    detail::Rng rng(detail::mix_seed({seed, 0xf10a7ULL}));
    constexpr int kProbes = 8;
    constexpr double kTolerance = 1e-8;
    out.probe_vanishes = true;
    for (int k = 0; k < kProbes && kernel.cols() > 0; ++k) {
        Eigen::VectorXcd coeffs(kernel.cols());
        for (Eigen::Index c = 0; c < coeffs.size(); ++c)
            coeffs(c) = Complex(static_cast<double>(rng.uniform(-1000, 1000)), static_cast<double>(rng.uniform(-1000, 1000)));
        Eigen::VectorXcd x = kernel * coeffs;
        x /= x.norm();
        Complex value = 0;
        for (const auto& t : q.terms())
            value += to_complex(t.coef) * x(static_cast<Eigen::Index>(t.row)) * x(static_cast<Eigen::Index>(t.col));
        if (std::abs(value) > kTolerance)
            out.probe_vanishes = false;
    }
    return out;
}

}  // namespace blowup
