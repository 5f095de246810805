#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "delayrc/common.hpp"
#include "delayrc/csv.hpp"
#include "delayrc/readout.hpp"
#include "delayrc/reservoir.hpp"

namespace delayrc {

/// Legendre polynomial P_d(u) by the three-term recurrence. With
/// `normalized` the value is scaled by sqrt(2d+1), which gives unit second
/// moment under inputs uniform on [-1, 1].
inline double legendre_eval(int degree, double u, bool normalized = true) {
    if (degree < 0) throw std::invalid_argument("negative Legendre degree");
    double p_prev = 1.0;  // P_0
    double p = u;         // P_1
    if (degree == 0) p = p_prev;
    for (int k = 1; k < degree; ++k) {
        const double p_next =
            ((2.0 * k + 1.0) * u * p - static_cast<double>(k) * p_prev) / (k + 1.0);
        p_prev = p;
        p = p_next;
    }
    return normalized ? std::sqrt(2.0 * degree + 1.0) * p : p;
}

/// One factor of a product task: the input `lag` steps back, passed
/// through the normalized Legendre polynomial of the given degree.
struct LegendreTerm {
    long lag = 1;    // >= 1
    int degree = 1;  // >= 1
};

inline bool operator==(const LegendreTerm& a, const LegendreTerm& b) {
    return a.lag == b.lag && a.degree == b.degree;
}

/// Product of Legendre factors at distinct lags; canonical order is by
/// ascending lag.
struct LegendreTask {
    std::vector<LegendreTerm> terms;

    int total_degree() const {
        int d = 0;
        for (const auto& t : terms) d += t.degree;
        return d;
    }

    long max_lag() const {
        long l = 0;
        for (const auto& t : terms) l = std::max(l, t.lag);
        return l;
    }

    void canonicalize() {
        std::sort(terms.begin(), terms.end(),
                  [](const LegendreTerm& a, const LegendreTerm& b) { return a.lag < b.lag; });
        for (std::size_t i = 0; i + 1 < terms.size(); ++i)
            if (terms[i].lag == terms[i + 1].lag)
                throw std::invalid_argument("task lags must be distinct");
    }

    /// "lag:degree|lag:degree" in canonical order.
    std::string id() const {
        std::string s;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) s += '|';
            s += std::to_string(terms[i].lag) + ':' + std::to_string(terms[i].degree);
        }
        return s;
    }
};

inline bool operator==(const LegendreTask& a, const LegendreTask& b) {
    return a.terms == b.terms;
}

/// target[i] = prod_t P~_{degree_t}(u[n_begin + i - lag_t]) for
/// i in [0, n_end - n_begin). Requires n_begin >= max lag.
inline Eigen::VectorXd build_target(const LegendreTask& task, std::span<const double> inputs,
                                    long n_begin, long n_end) {
    if (n_end < n_begin || n_end > static_cast<long>(inputs.size()))
        throw std::invalid_argument("target range outside input sequence");
    if (n_begin < task.max_lag())
        throw std::invalid_argument("insufficient input history for task lags");
    Eigen::VectorXd out = Eigen::VectorXd::Ones(n_end - n_begin);
    for (const auto& term : task.terms)
        for (long n = n_begin; n < n_end; ++n)
            out(n - n_begin) *=
                legendre_eval(term.degree, inputs[static_cast<std::size_t>(n - term.lag)]);
    return out;
}

struct CapacityRecord {
    LegendreTask task;
    double capacity = 0.0;
};

/// Measured tasks at or above the score threshold, with the degree-resolved
/// and total sums over them.
struct CapacityTable {
    std::vector<CapacityRecord> records;
    double threshold = 0.0;
    int degree_cap = 0;
    long lag_cap = 0;

    // diagnostics
    long tasks_evaluated = 0;
    long effective_rank = 0;
    double max_clamp_excess = 0.0;

    std::map<int, double> mc_by_degree() const {
        std::map<int, double> mc;
        for (int d = 1; d <= degree_cap; ++d) mc[d] = 0.0;
        for (const auto& r : records) mc[r.task.total_degree()] += r.capacity;
        return mc;
    }

    double total_mc() const {
        double sum = 0.0;
        for (const auto& r : records) sum += r.capacity;
        return sum;
    }

    /// Rows: task_id, lags ("1|5"), degrees ("2|1"), total_degree, capacity.
    void to_csv(std::ostream& os) const {
        os << "task_id,lags,degrees,total_degree,capacity\n";
        for (const auto& r : records) {
            std::string lags, degs;
            for (std::size_t i = 0; i < r.task.terms.size(); ++i) {
                if (i) {
                    lags += '|';
                    degs += '|';
                }
                lags += std::to_string(r.task.terms[i].lag);
                degs += std::to_string(r.task.terms[i].degree);
            }
            os << r.task.id() << ',' << lags << ',' << degs << ','
               << r.task.total_degree() << ',' << format_number(r.capacity) << '\n';
        }
    }
};

struct EnumerationOptions {
    int degree_cap = 10;
    long lag_cap = 1000;
    double threshold = 0.001;
    /// Stop extending a lag direction after this many consecutive values
    /// whose whole subtree scored below threshold. Raise it for runs where
    /// recallable lags split into widely separated rays (tau >> T).
    int dead_window = 10;
};

namespace detail {

/// Precomputed normalized Legendre values of every input, per degree.
class LegendreTable {
public:
    LegendreTable(std::span<const double> inputs, int max_degree)
        : n_(static_cast<long>(inputs.size())), values_(max_degree) {
        for (int d = 1; d <= max_degree; ++d) {
            auto& col = values_[static_cast<std::size_t>(d - 1)];
            col.resize(inputs.size());
            for (std::size_t i = 0; i < inputs.size(); ++i)
                col[i] = legendre_eval(d, inputs[i]);
        }
    }

    double value(int degree, long index) const {
        return values_[static_cast<std::size_t>(degree - 1)][static_cast<std::size_t>(index)];
    }

    long size() const { return n_; }

private:
    long n_;
    std::vector<std::vector<double>> values_;
};

class TaskEnumerator {
public:
    TaskEnumerator(CapacityEvaluator& ev, const LegendreTable& table, long n_begin,
                   long n_end, const EnumerationOptions& opt)
        : ev_(ev), table_(table), n_begin_(n_begin), n_end_(n_end), opt_(opt) {}

    CapacityTable run() {
        CapacityTable out;
        out.threshold = opt_.threshold;
        out.degree_cap = opt_.degree_cap;
        out.lag_cap = opt_.lag_cap;
        out_ = &out;

        const long lag_cap = std::min(opt_.lag_cap, n_begin_);
        for (int d = 1; d <= opt_.degree_cap; ++d) {
            int dead = 0;
            for (long max_lag = 1; max_lag <= lag_cap; ++max_lag) {
                bool alive = false;
                for (int d_outer = 1; d_outer <= d; ++d_outer) {
                    terms_.clear();
                    terms_.push_back({max_lag, d_outer});
                    if (d_outer == d)
                        alive |= measure();
                    else
                        alive |= extend(d - d_outer, 1, max_lag - 1);
                }
                dead = alive ? 0 : dead + 1;
                if (dead >= opt_.dead_window) break;
            }
        }

        std::sort(out.records.begin(), out.records.end(),
                  [](const CapacityRecord& a, const CapacityRecord& b) {
                      if (a.task.total_degree() != b.task.total_degree())
                          return a.task.total_degree() < b.task.total_degree();
                      return a.task.id() < b.task.id();
                  });
        out.tasks_evaluated = ev_.evaluations();
        out.effective_rank = ev_.rank();
        out.max_clamp_excess = ev_.max_excess();
        return out;
    }

private:
    /// Complete the current term stack with inner lags chosen ascending in
    /// [lag_lo, lag_hi], distributing `remaining` degree. Returns whether
    /// any completion scored at or above threshold. Each level stops after
    /// dead_window consecutive candidate lags whose subtrees all stayed
    /// below threshold.
    bool extend(int remaining, long lag_lo, long lag_hi) {
        bool any_alive = false;
        int dead = 0;
        for (long lag = lag_lo; lag <= lag_hi; ++lag) {
            bool alive = false;
            for (int deg = 1; deg <= remaining; ++deg) {
                terms_.push_back({lag, deg});
                if (deg == remaining)
                    alive |= measure();
                else
                    alive |= extend(remaining - deg, lag + 1, lag_hi);
                terms_.pop_back();
            }
            any_alive |= alive;
            dead = alive ? 0 : dead + 1;
            if (dead >= opt_.dead_window) break;
        }
        return any_alive;
    }

    bool measure() {
        target_.resize(n_end_ - n_begin_);
        target_.setOnes();
        for (const auto& term : terms_)
            for (long n = n_begin_; n < n_end_; ++n)
                target_(n - n_begin_) *= table_.value(term.degree, n - term.lag);
        const double c = ev_.capacity(target_);
        if (c >= opt_.threshold) {
            LegendreTask task{terms_};
            task.canonicalize();
            out_->records.push_back({std::move(task), c});
            return true;
        }
        return false;
    }

    CapacityEvaluator& ev_;
    const LegendreTable& table_;
    long n_begin_, n_end_;
    EnumerationOptions opt_;
    std::vector<LegendreTerm> terms_;
    Eigen::VectorXd target_;
    CapacityTable* out_ = nullptr;
};

}  // namespace detail

/// Measure every product task reachable under the caps, pruning lag
/// directions once a dead window closes, and aggregate the survivors.
/// Rows of `states` must correspond to consecutive inputs starting at
/// states.first_input_index.
inline CapacityTable enumerate_and_measure(const StateMatrix& states,
                                           std::span<const double> inputs,
                                           const EnumerationOptions& opt) {
    if (states.first_input_index + states.rows() > static_cast<long>(inputs.size()))
        throw ConfigError("state matrix rows extend past the input sequence");
    CapacityEvaluator ev(states.values);
    detail::LegendreTable table(inputs, opt.degree_cap);
    detail::TaskEnumerator en(ev, table, states.first_input_index,
                              states.first_input_index + states.rows(), opt);
    return en.run();
}

/// Capacities of the single-factor linear tasks for lags 1..max_lag,
/// unfiltered.
inline std::vector<std::pair<long, double>> linear_recall_profile(
    const StateMatrix& states, std::span<const double> inputs, long max_lag) {
    if (max_lag > states.first_input_index)
        throw ConfigError("max lag exceeds available input history");
    CapacityEvaluator ev(states.values);
    const long n0 = states.first_input_index;
    const long n1 = n0 + states.rows();
    std::vector<std::pair<long, double>> out;
    out.reserve(static_cast<std::size_t>(max_lag));
    for (long lag = 1; lag <= max_lag; ++lag) {
        LegendreTask task{{{lag, 1}}};
        out.emplace_back(lag, ev.capacity(build_target(task, inputs, n0, n1)));
    }
    return out;
}

struct PairCapacity {
    long lag1 = 1;  // <= lag2; lag1 == lag2 encodes the pure degree-2 task
    long lag2 = 1;
    double capacity = 0.0;
};

/// Degree-2 capacities: products u(-lag1) u(-lag2) for lag1 < lag2, and
/// pure second-degree tasks on the diagonal.
inline std::vector<PairCapacity> pair_quadratic_profile(const StateMatrix& states,
                                                        std::span<const double> inputs,
                                                        long max_lag1, long max_lag2) {
    const long needed = std::max(max_lag1, max_lag2);
    if (needed > states.first_input_index)
        throw ConfigError("max lag exceeds available input history");
    CapacityEvaluator ev(states.values);
    const long n0 = states.first_input_index;
    const long n1 = n0 + states.rows();
    std::vector<PairCapacity> out;
    for (long l1 = 1; l1 <= max_lag1; ++l1) {
        for (long l2 = l1; l2 <= max_lag2; ++l2) {
            LegendreTask task;
            if (l1 == l2)
                task.terms = {{l1, 2}};
            else
                task.terms = {{l1, 1}, {l2, 1}};
            out.push_back({l1, l2, ev.capacity(build_target(task, inputs, n0, n1))});
        }
    }
    return out;
}

}  // namespace delayrc
