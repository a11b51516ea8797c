#include "netwatch/surrogate.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace netwatch {

std::vector<double> surrogate_basis(SurrogateModel::Kind kind, double lambda, int n) {
    const double l = lambda;
    const double nd = static_cast<double>(n);
    switch (kind) {
        case SurrogateModel::Kind::HdLog: {
            const double ind = l < 0.95 ? 1.0 : 0.0;
            return {1.0,      nd,       nd * nd,      nd * nd * nd,
                    l,        l * l,    ind,          ind * l,
                    std::log(l), nd * std::log(l), nd * l, nd * l * l};
        }
        case SurrogateModel::Kind::HgRecip: {
            const double ll = std::log(l);
            const double ln = std::log(nd);
            const double n2 = nd * nd, n3 = nd * nd * nd;
            const double l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l;
            return {1.0, ll,     nd,     n2,     n3,      l,      l2,      l3,
                    ln,  nd * ll, n2 * ll, n3 * ll, nd * l, n2 * l,  n3 * l,  l4,
                    l * ln, l5,  l2 * ln, l3 * ln};
        }
        case SurrogateModel::Kind::ScanShape:
            return {1.0, nd};
    }
    return {};
}

namespace {

double transform_response(SurrogateModel::Kind kind, double h) {
    switch (kind) {
        case SurrogateModel::Kind::HdLog: return std::log(h);
        case SurrogateModel::Kind::HgRecip: return 1.0 / h;
        case SurrogateModel::Kind::ScanShape: return h;
    }
    return h;
}

double back_transform(SurrogateModel::Kind kind, double y) {
    switch (kind) {
        case SurrogateModel::Kind::HdLog: return std::exp(y);
        case SurrogateModel::Kind::HgRecip: return 1.0 / y;
        case SurrogateModel::Kind::ScanShape: return y;
    }
    return y;
}

SurrogateModel fit(SurrogateModel::Kind kind, const std::vector<FitSample>& samples) {
    const int p = SurrogateModel::basis_size(kind);
    const int m = static_cast<int>(samples.size());
    if (m < p)
        throw TooFewSamples("surrogate fit needs >= " + std::to_string(p) + " samples, got " +
                            std::to_string(m));

    Eigen::MatrixXd X(m, p);
    Eigen::VectorXd y(m);
    for (int r = 0; r < m; ++r) {
        if (kind != SurrogateModel::Kind::ScanShape && !(samples[r].h > 0.0))
            throw NegativeInput("threshold sample h must be positive for a link-transformed fit");
        auto basis = surrogate_basis(kind, samples[r].lambda, samples[r].n);
        for (int c = 0; c < p; ++c) X(r, c) = basis[c];
        y(r) = transform_response(kind, samples[r].h);
    }

    // Column equilibration keeps the n^3-vs-lambda scale spread out of the QR.
    Eigen::VectorXd scale(p);
    for (int c = 0; c < p; ++c) {
        double s = X.col(c).cwiseAbs().maxCoeff();
        scale(c) = s > 0.0 ? s : 1.0;
        X.col(c) /= scale(c);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < p)
        throw RankDeficient("design matrix rank " + std::to_string(qr.rank()) + " < " +
                            std::to_string(p));
    Eigen::VectorXd beta_scaled = qr.solve(y);

    SurrogateModel model;
    model.kind = kind;
    model.coefficients.resize(p);
    for (int c = 0; c < p; ++c) model.coefficients[c] = beta_scaled(c) / scale(c);

    Eigen::VectorXd resid = y - X * beta_scaled;
    const int dof = std::max(1, m - p);
    model.residual_se = std::sqrt(resid.squaredNorm() / dof);

    // Correlation of fitted vs observed thresholds on the h scale.
    Eigen::VectorXd fitted_h(m), obs_h(m);
    for (int r = 0; r < m; ++r) {
        fitted_h(r) = back_transform(kind, (X.row(r) * beta_scaled)(0));
        obs_h(r) = samples[r].h;
    }
    const double mf = fitted_h.mean(), mo = obs_h.mean();
    double sff = 0.0, soo = 0.0, sfo = 0.0;
    for (int r = 0; r < m; ++r) {
        sff += (fitted_h(r) - mf) * (fitted_h(r) - mf);
        soo += (obs_h(r) - mo) * (obs_h(r) - mo);
        sfo += (fitted_h(r) - mf) * (obs_h(r) - mo);
    }
    model.fit_correlation = (sff > 0.0 && soo > 0.0) ? sfo / std::sqrt(sff * soo) : 1.0;
    return model;
}

}  // namespace

SurrogateModel fit_hd_surrogate(const std::vector<FitSample>& samples) {
    return fit(SurrogateModel::Kind::HdLog, samples);
}

SurrogateModel fit_hg_surrogate(const std::vector<FitSample>& samples) {
    return fit(SurrogateModel::Kind::HgRecip, samples);
}

SurrogateModel fit_scan_shape(const std::vector<FitSample>& samples) {
    return fit(SurrogateModel::Kind::ScanShape, samples);
}

double predict_threshold(const SurrogateModel& model, double lambda, int n) {
    const int p = SurrogateModel::basis_size(model.kind);
    if (static_cast<int>(model.coefficients.size()) != p)
        throw SurrogateKindMismatch("surrogate has " + std::to_string(model.coefficients.size()) +
                                    " coefficients, kind needs " + std::to_string(p));
    auto basis = surrogate_basis(model.kind, lambda, n);
    double dot = 0.0;
    for (int c = 0; c < p; ++c) dot += basis[c] * model.coefficients[c];
    double h = 0.0;
    switch (model.kind) {
        case SurrogateModel::Kind::HdLog: h = std::exp(dot); break;
        case SurrogateModel::Kind::HgRecip:
            if (!(dot > 0.0))
                throw NonPositivePrediction("1/h predictor is " + std::to_string(dot) +
                                            " at (lambda=" + std::to_string(lambda) +
                                            ", n=" + std::to_string(n) + ")");
            h = 1.0 / dot;
            break;
        case SurrogateModel::Kind::ScanShape: h = dot; break;
    }
    if (!(h > 0.0))
        throw NonPositivePrediction("predicted threshold " + std::to_string(h) +
                                    " at (lambda=" + std::to_string(lambda) + ", n=" +
                                    std::to_string(n) + ")");
    return h;
}

}  // namespace netwatch
