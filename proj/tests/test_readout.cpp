#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <random>

#include "delayrc/readout.hpp"

using namespace delayrc;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXd random_matrix(long rows, long cols, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m(i, j) = dist(eng);
    return m;
}

Eigen::VectorXd random_vector(long n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (long i = 0; i < n; ++i) v(i) = dist(eng);
    return v;
}

}  // namespace

TEST_CASE("identity design interpolates exactly") {
    const Eigen::MatrixXd s = Eigen::MatrixXd::Identity(6, 6);
    const Eigen::VectorXd o = random_vector(6, 1);
    const ReadoutWeights w = train_least_squares(s, o);
    CHECK((w.weights - o).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("target in the column space is fit exactly") {
    const Eigen::MatrixXd s = random_matrix(100, 5, 2);
    const Eigen::VectorXd o = 3.0 * s.col(2);
    const ReadoutWeights w = train_least_squares(s, o);
    CHECK_THAT(w.weights(2), WithinAbs(3.0, 1e-9));
    for (long j : {0L, 1L, 3L, 4L}) CHECK_THAT(w.weights(j), WithinAbs(0.0, 1e-9));
    CHECK_THAT(nrmse(predict(s, w), o), WithinAbs(0.0, 1e-9));
}

TEST_CASE("residual is orthogonal to the column space") {
    const Eigen::MatrixXd s = random_matrix(100, 5, 3);
    const Eigen::VectorXd o = random_vector(100, 4);
    const ReadoutWeights w = train_least_squares(s, o);
    const Eigen::VectorXd residual = s * w.weights - o;
    CHECK((s.transpose() * residual).norm() <= 1e-8 * (s.transpose() * o).norm());
}

TEST_CASE("all-zero states give zero weights with the degenerate flag") {
    const Eigen::MatrixXd s = Eigen::MatrixXd::Zero(50, 4);
    const Eigen::VectorXd o = random_vector(50, 5);
    const ReadoutWeights w = train_least_squares(s, o);
    CHECK(w.degenerate);
    CHECK(w.weights.isZero(0.0));
}

TEST_CASE("bias column absorbs a target offset") {
    const Eigen::MatrixXd s = random_matrix(200, 4, 6);
    Eigen::VectorXd o = s.col(1);
    o.array() += 5.0;
    const ReadoutWeights w = train_least_squares(s, o, true);
    CHECK(w.has_bias);
    const Eigen::VectorXd y = predict(s, w);
    CHECK((y - o).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("normalized error agrees with the worked example") {
    Eigen::VectorXd o(2), ohat(2);
    o << 0.0, 1.0;
    ohat << 0.0, 0.0;
    CHECK_THAT(nrmse(ohat, o), WithinAbs(std::sqrt(2.0), 1e-12));

    // exact predictions: zero error
    CHECK_THAT(nrmse(o, o), WithinAbs(0.0, 1e-12));

    // predicting the mean: error of one
    Eigen::VectorXd mean_pred = Eigen::VectorXd::Constant(2, 0.5);
    CHECK_THAT(nrmse(mean_pred, o), WithinAbs(1.0, 1e-12));
}

TEST_CASE("zero target variance is rejected") {
    const Eigen::VectorXd o = Eigen::VectorXd::Constant(10, 3.0);
    const Eigen::VectorXd ohat = Eigen::VectorXd::Zero(10);
    CHECK_THROWS_AS(nrmse(ohat, o), UndefinedVarianceError);
}

TEST_CASE("capacity of an in-space target is one, of an orthogonal one zero") {
    const Eigen::MatrixXd s = random_matrix(120, 6, 7);
    CapacityEvaluator ev(s);

    Eigen::MatrixXd centered = s.rowwise() - s.colwise().mean().eval();
    CHECK_THAT(ev.capacity(centered.col(3)), WithinAbs(1.0, 1e-9));

    // strip the projection onto [1, centered columns] off a random vector
    Eigen::MatrixXd basis(120, 7);
    basis.col(0).setOnes();
    basis.rightCols(6) = centered;
    Eigen::VectorXd o = random_vector(120, 8);
    const Eigen::VectorXd coeffs = basis.colPivHouseholderQr().solve(o);
    o -= basis * coeffs;
    CHECK_THAT(ev.capacity(o), WithinAbs(0.0, 1e-9));
    CHECK(ev.max_excess() <= 1e-6);
}

TEST_CASE("capacity equals one minus squared error on the same data") {
    const Eigen::MatrixXd s = random_matrix(200, 8, 9);
    const Eigen::VectorXd o = random_vector(200, 10);
    const RegressionReport rep = evaluate_readout(s, o);
    CHECK_THAT(rep.capacity, WithinAbs(1.0 - rep.nrmse * rep.nrmse, 1e-8));
    CHECK(rep.effective_rank == 8);
}

TEST_CASE("capacity is scale invariant in the target") {
    const Eigen::MatrixXd s = random_matrix(150, 5, 11);
    const Eigen::VectorXd o = random_vector(150, 12);
    CapacityEvaluator ev(s);
    const double base = ev.capacity(o);
    for (double c : {3.0, -0.2, 1e6}) {
        CHECK_THAT(ev.capacity(c * o), WithinAbs(base, 1e-10));
    }
}

TEST_CASE("appending a column never decreases capacity") {
    const Eigen::MatrixXd s = random_matrix(150, 5, 13);
    const Eigen::VectorXd o = random_vector(150, 14);
    Eigen::MatrixXd wider(150, 6);
    wider.leftCols(5) = s;
    wider.col(5) = random_vector(150, 15);
    CHECK(capacity_direct(wider, o) >= capacity_direct(s, o) - 1e-9);
}

TEST_CASE("capacity stays within bounds over random instances") {
    for (int rep = 0; rep < 30; ++rep) {
        const long rows = 50 + 13 * rep;
        const long cols = 3 + rep % 4;
        const Eigen::MatrixXd s = random_matrix(rows, cols, 100 + rep);
        CapacityEvaluator ev(s);
        const double c = ev.capacity(random_vector(rows, 200 + rep));
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        CHECK(ev.max_excess() <= 1e-6);
    }
}

TEST_CASE("degenerate inputs are rejected") {
    const Eigen::MatrixXd s = random_matrix(60, 4, 16);
    CHECK_THROWS_AS(capacity_direct(s, Eigen::VectorXd::Constant(60, 2.0)),
                    UndefinedCapacityError);
    CHECK_THROWS_AS(CapacityEvaluator(random_matrix(30, 4, 17)), std::invalid_argument);
    CHECK_THROWS_AS(train_least_squares(random_matrix(3, 5, 18), random_vector(3, 19)),
                    std::invalid_argument);
}
