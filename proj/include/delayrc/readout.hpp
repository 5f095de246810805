#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "delayrc/common.hpp"

namespace delayrc {

/// Singular values below this fraction of the largest are treated as zero
/// throughout readout training and capacity evaluation.
inline constexpr double kPinvRelTol = 1e-10;

struct ReadoutWeights {
    Eigen::VectorXd weights;
    double bias = 0.0;
    bool has_bias = false;
    bool degenerate = false;  // all-zero state matrix, weights forced to zero
};

/// Minimize ||S w - o||^2 (plus an intercept when with_bias) through an
/// SVD pseudoinverse with relative cutoff kPinvRelTol.
inline ReadoutWeights train_least_squares(const Eigen::MatrixXd& states,
                                          const Eigen::VectorXd& targets,
                                          bool with_bias = false) {
    if (states.rows() != targets.size())
        throw std::invalid_argument("state rows and target length differ");
    if (states.rows() < states.cols())
        throw std::invalid_argument("underdetermined readout: fewer rows than columns");

    ReadoutWeights out;
    out.has_bias = with_bias;

    Eigen::MatrixXd design;
    if (with_bias) {
        design.resize(states.rows(), states.cols() + 1);
        design.leftCols(states.cols()) = states;
        design.rightCols(1).setOnes();
    } else {
        design = states;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kPinvRelTol);
    if (svd.rank() == 0) {
        out.degenerate = true;
        out.weights = Eigen::VectorXd::Zero(states.cols());
        return out;
    }
    Eigen::VectorXd solution = svd.solve(targets);
    if (with_bias) {
        out.weights = solution.head(states.cols());
        out.bias = solution(states.cols());
    } else {
        out.weights = solution;
    }
    return out;
}

inline Eigen::VectorXd predict(const Eigen::MatrixXd& states, const ReadoutWeights& w) {
    Eigen::VectorXd y = states * w.weights;
    if (w.has_bias) y.array() += w.bias;
    return y;
}

/// sqrt( sum (o - ohat)^2 / (N var(o)) ) with the population variance.
inline double nrmse(const Eigen::VectorXd& predictions, const Eigen::VectorXd& targets) {
    if (predictions.size() != targets.size())
        throw std::invalid_argument("prediction and target lengths differ");
    const auto n = targets.size();
    if (n < 2) throw std::invalid_argument("need at least two samples");
    const double mean = targets.mean();
    const double var = (targets.array() - mean).square().sum() / static_cast<double>(n);
    if (!(var > 0.0)) throw UndefinedVarianceError();
    const double sse = (targets - predictions).squaredNorm();
    return std::sqrt(sse / (static_cast<double>(n) * var));
}

/// Shared projector onto the column space of one column-centered state
/// matrix. Built once, then queried for many targets: the capacity of a
/// target is the squared fraction of its centered norm lying inside that
/// column space. Tracks the worst excursion outside [0,1] seen before
/// clamping.
class CapacityEvaluator {
public:
    explicit CapacityEvaluator(const Eigen::MatrixXd& states) {
        if (states.rows() < 10 * states.cols())
            throw std::invalid_argument("state matrix needs rows >= 10*cols");
        col_means_ = states.colwise().mean();
        Eigen::MatrixXd centered = states.rowwise() - col_means_;
        Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
        svd.setThreshold(kPinvRelTol);
        rank_ = svd.rank();
        basis_ = svd.matrixU().leftCols(rank_);
    }

    double capacity(const Eigen::VectorXd& target) {
        const double mean = target.mean();
        Eigen::VectorXd centered = target.array() - mean;
        const double denom = centered.squaredNorm();
        if (denom <= 1e-24 * std::max(1.0, target.squaredNorm()))
            throw UndefinedCapacityError();
        double c = rank_ == 0 ? 0.0 : (basis_.transpose() * centered).squaredNorm() / denom;
        ++evaluations_;
        const double excess = std::max(c - 1.0, -c);
        if (excess > max_excess_) max_excess_ = excess;
        return std::clamp(c, 0.0, 1.0);
    }

    long rank() const { return rank_; }
    long rows() const { return basis_.rows(); }
    double max_excess() const { return max_excess_; }
    long evaluations() const { return evaluations_; }

private:
    Eigen::MatrixXd basis_;  // thin orthonormal column basis, N x rank
    Eigen::RowVectorXd col_means_;
    long rank_ = 0;
    double max_excess_ = 0.0;
    long evaluations_ = 0;
};

/// One-shot capacity of a single target against a state matrix. Centering
/// of both sides happens internally.
inline double capacity_direct(const Eigen::MatrixXd& states, const Eigen::VectorXd& targets) {
    if (states.rows() != targets.size())
        throw std::invalid_argument("state rows and target length differ");
    CapacityEvaluator ev(states);
    return ev.capacity(targets);
}

struct RegressionReport {
    double nrmse = 0.0;
    double capacity = 0.0;
    long effective_rank = 0;
};

/// Train on the centered data and score on the same data, so that
/// capacity == 1 - nrmse^2 up to roundoff.
inline RegressionReport evaluate_readout(const Eigen::MatrixXd& states,
                                         const Eigen::VectorXd& targets) {
    RegressionReport rep;
    Eigen::RowVectorXd col_means = states.colwise().mean();
    Eigen::MatrixXd sc = states.rowwise() - col_means;
    const double t_mean = targets.mean();
    Eigen::VectorXd tc = targets.array() - t_mean;

    ReadoutWeights w = train_least_squares(sc, tc, false);
    rep.nrmse = nrmse(predict(sc, w), tc);

    CapacityEvaluator ev(states);
    rep.capacity = ev.capacity(targets);
    rep.effective_rank = ev.rank();
    return rep;
}

}  // namespace delayrc
