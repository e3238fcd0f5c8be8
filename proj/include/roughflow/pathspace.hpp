#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace roughflow {

/// Non-owning view of a stopped path: m samples at strictly increasing
/// times starting at 0, piecewise-linear between samples and constant
/// beyond the last one. An optional constant shift is added to every value,
/// which lets perturbed evaluations avoid copying the sample buffer.
struct PathView {
    int dim = 0;
    std::span<const double> times;   // m entries
    std::span<const double> values;  // m*dim entries, sample-major
    const double* shift = nullptr;   // optional, dim entries

    std::size_t size() const { return times.size(); }
    double end_time() const { return times.empty() ? 0.0 : times.back(); }

    double value(std::size_t i, int c) const {
        return values[i * dim + c] + (shift ? shift[c] : 0.0);
    }

    /// Index of the sample at or left of u (0 if u <= times[0]).
    std::size_t segment_index(double u) const;

    /// Linear interpolation on [0,a], constant extension beyond a.
    void value_at(double u, std::span<double> out) const;
    double scalar_at(double u, int c = 0) const;

    /// Sup of the euclidean norm over the samples.
    double sup_norm() const;
};

/// A sampled element of the stopped-path space: a path over [0,a] together
/// with its end time a. Values between samples interpolate linearly; an
/// end time of 0 is a single point. Immutable; mutators return new paths.
class StoppedPath {
public:
    StoppedPath() = default;
    /// Single point at time 0 (end time a = 0).
    StoppedPath(int dim, std::span<const double> point);
    StoppedPath(int dim, std::vector<double> times, std::vector<double> values);

    static StoppedPath point(int dim, std::span<const double> x) { return {dim, x}; }
    /// Constant path equal to x on [0,a].
    static StoppedPath constant(int dim, std::span<const double> x, double a);
    /// Sample a callable t -> R^d on a uniform grid over [0,a].
    static StoppedPath sampled(int dim, double a, std::size_t segments,
                               const std::function<void(double, std::span<double>)>& f);

    int dim() const { return dim_; }
    double end_time() const { return times_.empty() ? 0.0 : times_.back(); }
    std::size_t size() const { return times_.size(); }
    std::span<const double> times() const { return times_; }
    std::span<const double> values() const { return values_; }
    double time(std::size_t i) const { return times_[i]; }
    std::span<const double> value(std::size_t i) const { return {values_.data() + i * dim_, static_cast<std::size_t>(dim_)}; }

    PathView view() const { return {dim_, times_, values_, nullptr}; }
    operator PathView() const { return view(); }

    std::vector<double> eval_at(double u) const;

    /// New path with a sample appended at end_time + dt.
    StoppedPath append(double dt, std::span<const double> value) const;

    /// New path with every sample shifted by eps * v.
    StoppedPath perturb(std::span<const double> v, double eps) const;

private:
    int dim_ = 0;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Linear interpolation with constant extension; realizes the extension of
/// y to [0,infinity) by its final value.
std::vector<double> eval_at(const PathView& y, double u);
void eval_at(const PathView& y, double u, std::span<double> out);

/// |b - a| + sup_t |extension(y) - extension(z)|, the sup taken over the
/// union of the two sample grids (exact for piecewise-linear paths).
double metric_d(const PathView& y, const PathView& z);

StoppedPath perturb(const PathView& y, std::span<const double> v, double eps);

/// Piecewise-constant slope representative of the derivative, returned as a
/// path sampled at 0, the segment midpoints and the end time. Throws for
/// single-point paths.
StoppedPath derivative_path(const PathView& y);

/// Growable sample buffer used by integrators; exposes cheap PathViews of
/// the current prefix. Appends invalidate nothing: views only ever read the
/// first `size` samples, which never change.
class PathAccumulator {
public:
    explicit PathAccumulator(int dim) : dim_(dim) {}

    void seed_point(double t0, std::span<const double> x);
    /// Constant history x on [0, t0] (two samples, or one when t0 == 0).
    void seed_constant(double t0, std::span<const double> x);
    void push(double t, std::span<const double> x);
    void pop();
    std::size_t size() const { return times_.size(); }
    double last_time() const { return times_.back(); }
    std::span<const double> last_value() const { return {values_.data() + (times_.size() - 1) * dim_, static_cast<std::size_t>(dim_)}; }

    PathView view() const { return {dim_, times_, values_, nullptr}; }
    StoppedPath snapshot() const { return {dim_, times_, values_}; }

private:
    int dim_;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Path file format: header "dim=<d> count=<m>", then m lines "t v1 ... vd"
/// with strictly increasing t.
void write_path(std::ostream& os, const PathView& y);
StoppedPath read_path(std::istream& is);
void write_path_file(const std::string& filename, const PathView& y);
StoppedPath read_path_file(const std::string& filename);

}  // namespace roughflow
