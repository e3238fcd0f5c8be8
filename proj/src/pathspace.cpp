#include "roughflow/pathspace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "roughflow/util.hpp"

namespace roughflow {

std::size_t PathView::segment_index(double u) const {
    if (times.size() <= 1 || u <= times.front()) return 0;
    // last index with times[i] <= u
    auto it = std::upper_bound(times.begin(), times.end(), u);
    return static_cast<std::size_t>(it - times.begin()) - 1;
}

void PathView::value_at(double u, std::span<double> out) const {
    const std::size_t m = times.size();
    if (u >= times.back() || m == 1) {
        for (int c = 0; c < dim; ++c) out[c] = value(m - 1, c);
        return;
    }
    if (u <= times.front()) {
        for (int c = 0; c < dim; ++c) out[c] = value(0, c);
        return;
    }
    const std::size_t i = segment_index(u);
    const double t0 = times[i], t1 = times[i + 1];
    const double w = (u - t0) / (t1 - t0);
    for (int c = 0; c < dim; ++c) out[c] = (1.0 - w) * value(i, c) + w * value(i + 1, c);
}

double PathView::scalar_at(double u, int c) const {
    const std::size_t m = times.size();
    if (u >= times.back() || m == 1) return value(m - 1, c);
    if (u <= times.front()) return value(0, c);
    const std::size_t i = segment_index(u);
    const double w = (u - times[i]) / (times[i + 1] - times[i]);
    return (1.0 - w) * value(i, c) + w * value(i + 1, c);
}

double PathView::sup_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double v = value(i, c);
            s += v * v;
        }
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

StoppedPath::StoppedPath(int dim, std::span<const double> point)
    : dim_(dim), times_(1, 0.0), values_(point.begin(), point.end()) {
    if (dim < 1) throw std::invalid_argument("StoppedPath: dim must be positive");
    if (static_cast<int>(point.size()) != dim)
        throw std::invalid_argument("StoppedPath: point size != dim");
}

StoppedPath::StoppedPath(int dim, std::vector<double> times, std::vector<double> values)
    : dim_(dim), times_(std::move(times)), values_(std::move(values)) {
    if (dim < 1) throw std::invalid_argument("StoppedPath: dim must be positive");
    if (times_.empty()) throw std::invalid_argument("StoppedPath: needs at least one sample");
    if (times_.front() != 0.0) throw std::invalid_argument("StoppedPath: first sample must be at time 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw std::invalid_argument("StoppedPath: times must be strictly increasing");
    if (values_.size() != times_.size() * static_cast<std::size_t>(dim))
        throw std::invalid_argument("StoppedPath: value count mismatch");
}

StoppedPath StoppedPath::constant(int dim, std::span<const double> x, double a) {
    if (a < 0.0) throw std::invalid_argument("StoppedPath::constant: negative end time");
    if (a == 0.0) return point(dim, x);
    std::vector<double> times{0.0, a};
    std::vector<double> values(x.begin(), x.end());
    values.insert(values.end(), x.begin(), x.end());
    return {dim, std::move(times), std::move(values)};
}

StoppedPath StoppedPath::sampled(int dim, double a, std::size_t segments,
                                 const std::function<void(double, std::span<double>)>& f) {
    if (segments < 1) throw std::invalid_argument("StoppedPath::sampled: needs >= 1 segment");
    std::vector<double> times(segments + 1);
    std::vector<double> values((segments + 1) * dim);
    for (std::size_t i = 0; i <= segments; ++i) {
        times[i] = a * static_cast<double>(i) / static_cast<double>(segments);
        f(times[i], {values.data() + i * dim, static_cast<std::size_t>(dim)});
    }
    return {dim, std::move(times), std::move(values)};
}

std::vector<double> StoppedPath::eval_at(double u) const { return roughflow::eval_at(view(), u); }

StoppedPath StoppedPath::append(double dt, std::span<const double> value) const {
    if (!(dt > 0.0)) throw std::invalid_argument("append: dt must be positive");
    if (static_cast<int>(value.size()) != dim_)
        throw std::invalid_argument("append: value size != dim");
    StoppedPath out = *this;
    out.times_.push_back(end_time() + dt);
    out.values_.insert(out.values_.end(), value.begin(), value.end());
    return out;
}

StoppedPath StoppedPath::perturb(std::span<const double> v, double eps) const {
    return roughflow::perturb(view(), v, eps);
}

std::vector<double> eval_at(const PathView& y, double u) {
    std::vector<double> out(y.dim);
    y.value_at(u, out);
    return out;
}

void eval_at(const PathView& y, double u, std::span<double> out) { y.value_at(u, out); }

double metric_d(const PathView& y, const PathView& z) {
    if (y.dim != z.dim) throw std::invalid_argument("metric_d: dimension mismatch");
    const int d = y.dim;
    double sup2 = 0.0;
    std::vector<double> vy(d), vz(d);
    auto consider = [&](double t) {
        y.value_at(t, vy);
        z.value_at(t, vz);
        double s = 0.0;
        for (int c = 0; c < d; ++c) {
            const double diff = vy[c] - vz[c];
            s += diff * diff;
        }
        sup2 = std::max(sup2, s);
    };
    for (std::size_t i = 0; i < y.size(); ++i) consider(y.times[i]);
    for (std::size_t i = 0; i < z.size(); ++i) consider(z.times[i]);
    return std::abs(y.end_time() - z.end_time()) + std::sqrt(sup2);
}

StoppedPath perturb(const PathView& y, std::span<const double> v, double eps) {
    if (static_cast<int>(v.size()) != y.dim)
        throw std::invalid_argument("perturb: direction size != dim");
    std::vector<double> times(y.times.begin(), y.times.end());
    std::vector<double> values(y.size() * y.dim);
    for (std::size_t i = 0; i < y.size(); ++i)
        for (int c = 0; c < y.dim; ++c)
            values[i * y.dim + c] = y.value(i, c) + eps * v[c];
    return {y.dim, std::move(times), std::move(values)};
}

StoppedPath derivative_path(const PathView& y) {
    const std::size_t m = y.size();
    if (m < 2)
        throw std::invalid_argument("derivative_path: derivative of a point path undefined");
    const int d = y.dim;
    const std::size_t segs = m - 1;
    std::vector<double> slopes(segs * d);
    for (std::size_t i = 0; i < segs; ++i) {
        const double dt = y.times[i + 1] - y.times[i];
        for (int c = 0; c < d; ++c)
            slopes[i * d + c] = (y.value(i + 1, c) - y.value(i, c)) / dt;
    }
    // sample at 0, midpoints, end: linear interpolation of these nodes is a
    // second-order representative of the underlying step function
    std::vector<double> times;
    std::vector<double> values;
    times.reserve(segs + 2);
    values.reserve((segs + 2) * d);
    auto push = [&](double t, const double* v) {
        times.push_back(t);
        values.insert(values.end(), v, v + d);
    };
    push(0.0, slopes.data());
    for (std::size_t i = 0; i < segs; ++i)
        push(0.5 * (y.times[i] + y.times[i + 1]), slopes.data() + i * d);
    push(y.end_time(), slopes.data() + (segs - 1) * d);
    return {d, std::move(times), std::move(values)};
}

void PathAccumulator::seed_point(double t0, std::span<const double> x) {
    times_.assign(1, t0);
    values_.assign(x.begin(), x.end());
}

void PathAccumulator::seed_constant(double t0, std::span<const double> x) {
    if (t0 <= 0.0) {
        seed_point(0.0, x);
        return;
    }
    times_ = {0.0, t0};
    values_.assign(x.begin(), x.end());
    values_.insert(values_.end(), x.begin(), x.end());
}

void PathAccumulator::push(double t, std::span<const double> x) {
    times_.push_back(t);
    values_.insert(values_.end(), x.begin(), x.end());
}

void PathAccumulator::pop() {
    times_.pop_back();
    values_.resize(values_.size() - dim_);
}

void write_path(std::ostream& os, const PathView& y) {
    os << "dim=" << y.dim << " count=" << y.size() << '\n';
    for (std::size_t i = 0; i < y.size(); ++i) {
        os << format_double(y.times[i]);
        for (int c = 0; c < y.dim; ++c) os << ' ' << format_double(y.value(i, c));
        os << '\n';
    }
}

StoppedPath read_path(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("path file: missing header");
    int dim = 0;
    std::size_t count = 0;
    if (std::sscanf(header.c_str(), "dim=%d count=%zu", &dim, &count) != 2)
        throw std::invalid_argument("path file: malformed header '" + header + "'");
    std::vector<double> times(count), values(count * dim);
    for (std::size_t i = 0; i < count; ++i) {
        if (!(is >> times[i])) throw std::invalid_argument("path file: truncated sample times");
        for (int c = 0; c < dim; ++c)
            if (!(is >> values[i * dim + c]))
                throw std::invalid_argument("path file: truncated sample values");
    }
    return {dim, std::move(times), std::move(values)};
}

void write_path_file(const std::string& filename, const PathView& y) {
    std::ofstream os(filename);
    if (!os) throw std::invalid_argument("cannot open path file for writing: " + filename);
    write_path(os, y);
}

StoppedPath read_path_file(const std::string& filename) {
    std::ifstream is(filename);
    if (!is) throw std::invalid_argument("cannot open path file: " + filename);
    return read_path(is);
}

}  // namespace roughflow
