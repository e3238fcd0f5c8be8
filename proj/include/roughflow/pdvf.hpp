#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "roughflow/pathspace.hpp"

namespace roughflow {

/// Smooth map R^d -> R^d with an evaluable Jacobian; the pointwise
/// ingredient of the concrete path-dependent fields below.
class PointMap {
public:
    explicit PointMap(int dim) : dim_(dim) {}
    virtual ~PointMap() = default;
    int dim() const { return dim_; }
    virtual void value(std::span<const double> x, std::span<double> out) const = 0;
    /// Row-major d*d Jacobian.
    virtual void jacobian(std::span<const double> x, std::span<double> out) const = 0;

private:
    int dim_;
};

/// x -> A x + b.
std::shared_ptr<PointMap> make_linear_map(int dim, std::vector<double> matrix,
                                          std::vector<double> offset = {});
/// x -> scale * g(x_i) componentwise, from a scalar function and derivative.
std::shared_ptr<PointMap> make_componentwise_map(int dim,
                                                 std::function<double(double)> g,
                                                 std::function<double(double)> dg,
                                                 double scale = 1.0);
/// x -> A g(B x) for a componentwise inner map; A and B default to identity.
std::shared_ptr<PointMap> make_sandwich_map(int dim,
                                            std::function<double(double)> g,
                                            std::function<double(double)> dg,
                                            std::vector<double> post = {},
                                            std::vector<double> pre = {});

/// A map from stopped paths to R^d. Implementations may expose a closed-form
/// directional derivative (derivative of eval under a constant shift of the
/// whole history) and a closed-form fine derivative (derivative of eval
/// along history growth).
class PathVectorField {
public:
    explicit PathVectorField(int dim) : dim_(dim) {}
    virtual ~PathVectorField() = default;

    int dim() const { return dim_; }

    virtual void eval_into(const PathView& y, std::span<double> out) const = 0;
    std::vector<double> eval(const PathView& y) const;

    virtual bool has_directional() const { return false; }
    /// d/deps at 0 of eval(y + eps*v); closed form when has_directional().
    virtual void directional_into(const PathView& y, std::span<const double> v,
                                  std::span<double> out) const;

    virtual bool has_fine_derivative() const { return false; }
    /// V'(y_{[0,a]}; ydot_{[0,a]}), the derivative of eval along history growth.
    virtual void fine_derivative_into(const PathView& y, const PathView& ydot,
                                      std::span<double> out) const;

    /// True when eval depends on the history only through its endpoint.
    virtual bool is_markovian() const { return false; }

protected:
    void check_dim(const PathView& y) const;

private:
    int dim_;
};

using FieldPtr = std::shared_ptr<const PathVectorField>;

class ZeroField final : public PathVectorField {
public:
    explicit ZeroField(int dim) : PathVectorField(dim) {}
    void eval_into(const PathView& y, std::span<double> out) const override;
    bool has_directional() const override { return true; }
    void directional_into(const PathView&, std::span<const double>, std::span<double> out) const override;
    bool has_fine_derivative() const override { return true; }
    void fine_derivative_into(const PathView&, const PathView&, std::span<double> out) const override;
    bool is_markovian() const override { return true; }
};

class ConstantField final : public PathVectorField {
public:
    explicit ConstantField(std::vector<double> value);
    void eval_into(const PathView& y, std::span<double> out) const override;
    bool has_directional() const override { return true; }
    void directional_into(const PathView&, std::span<const double>, std::span<double> out) const override;
    bool has_fine_derivative() const override { return true; }
    void fine_derivative_into(const PathView&, const PathView&, std::span<double> out) const override;
    bool is_markovian() const override { return true; }

private:
    std::vector<double> value_;
};

/// V(y_{[0,a]}) = v(y_a) for a smooth point map v.
class MarkovianField final : public PathVectorField {
public:
    explicit MarkovianField(std::shared_ptr<PointMap> map);
    void eval_into(const PathView& y, std::span<double> out) const override;
    bool has_directional() const override { return true; }
    void directional_into(const PathView& y, std::span<const double> v, std::span<double> out) const override;
    bool has_fine_derivative() const override { return true; }
    void fine_derivative_into(const PathView& y, const PathView& ydot, std::span<double> out) const override;
    bool is_markovian() const override { return true; }

private:
    std::shared_ptr<PointMap> map_;
};

/// A delay lag r(a) with its derivative; evaluation times are (a - r(a)) v 0.
struct Delay {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    static Delay constant(double r);
};

/// V(y_{[0,a]}) = sum_i g_i(y_{(a - r_i(a)) v 0}). The summands keep the
/// partial derivatives of the joint map block-diagonal, which is all the
/// bundled examples need; all r_i == 0 reduces to a Markovian field.
class DelayField final : public PathVectorField {
public:
    DelayField(int dim, std::vector<Delay> delays, std::vector<std::shared_ptr<PointMap>> maps);
    void eval_into(const PathView& y, std::span<double> out) const override;
    bool has_directional() const override { return true; }
    void directional_into(const PathView& y, std::span<const double> v, std::span<double> out) const override;
    bool has_fine_derivative() const override { return true; }
    void fine_derivative_into(const PathView& y, const PathView& ydot, std::span<double> out) const override;
    bool is_markovian() const override;

private:
    std::vector<Delay> delays_;
    std::vector<std::shared_ptr<PointMap>> maps_;
};

/// V(y_{[0,a]}) = average of g(y_r) over [max(0, a - window), a], computed
/// by trapezoid quadrature on the sample grid; g(y_0) when a = 0. A window
/// of 0 averages over all of [0,a].
class MovingAverageField final : public PathVectorField {
public:
    MovingAverageField(std::shared_ptr<PointMap> map, double window = 0.0);
    void eval_into(const PathView& y, std::span<double> out) const override;
    bool has_directional() const override { return true; }
    void directional_into(const PathView& y, std::span<const double> v, std::span<double> out) const override;
    bool has_fine_derivative() const override { return true; }
    void fine_derivative_into(const PathView& y, const PathView& ydot, std::span<double> out) const override;

private:
    std::shared_ptr<PointMap> map_;
    double window_;
};

/// y -> (VW)(y), the derivative of W at y along the constant direction V(y).
class DirectionalDerivativeField final : public PathVectorField {
public:
    DirectionalDerivativeField(FieldPtr outer, FieldPtr inner);
    void eval_into(const PathView& y, std::span<double> out) const override;
    bool has_fine_derivative() const override;
    void fine_derivative_into(const PathView& y, const PathView& ydot, std::span<double> out) const override;

private:
    FieldPtr v_, w_;
};

/// y -> [V,W](y) = (VW)(y) - (WV)(y).
class LieBracketField final : public PathVectorField {
public:
    LieBracketField(FieldPtr v, FieldPtr w);
    void eval_into(const PathView& y, std::span<double> out) const override;
    bool has_fine_derivative() const override;
    void fine_derivative_into(const PathView& y, const PathView& ydot, std::span<double> out) const override;

private:
    FieldPtr v_, w_;
};

/// Central-difference step for derivative fallbacks.
double fd_step(const PathView& y);

/// (VW)(y) = d/deps at 0 of W(y + eps * V(y)); closed form of W when
/// available, central difference otherwise.
void directional_vw_into(const PathVectorField& V, const PathVectorField& W,
                         const PathView& y, std::span<double> out);
std::vector<double> directional_vw(const PathVectorField& V, const PathVectorField& W,
                                   const PathView& y);

/// [V,W](y) = (VW)(y) - (WV)(y); antisymmetric by construction.
std::vector<double> bracket(const PathVectorField& V, const PathVectorField& W,
                            const PathView& y);

std::vector<double> fine_derivative(const PathVectorField& V, const PathView& y,
                                    const PathView& ydot);

/// Defect of V(y_{[0,a]}) = V(y_{[0,0]}) + int_0^a V'(y_{[0,r]}; ydot) dr,
/// with trapezoid quadrature over the sample grid. Returns the euclidean
/// norm of the gap.
double check_fine_identity(const PathVectorField& V, const PathView& y);

/// Fine derivative of the composite (VW), as the two-term expansion: the
/// growth derivative of y -> D_y W applied to the frozen direction V(y),
/// plus D_y W applied to the growth derivative of V. Needs W directional
/// and V finely differentiable.
std::vector<double> vw_fine_derivative(const PathVectorField& V, const PathVectorField& W,
                                       const PathView& y, const PathView& ydot);

/// Scalar observable with gradient and Hessian callbacks.
struct ScalarC3 {
    std::function<double(std::span<const double>)> value;
    std::function<void(std::span<const double>, std::span<double>)> gradient;
    std::function<void(std::span<const double>, std::span<double>)> hessian;  // row-major d*d
};

struct VfResult {
    double value;            // (Vf)(y) = <grad f(y_a), V(y)>
    double fine_derivative;  // (Vf)'(y; ydot)
};

VfResult vf_of_function(const PathVectorField& V, const ScalarC3& f,
                        const PathView& y, const PathView& ydot);

/// Probe-based estimates of the sup norms entering the regularity
/// assumptions. These are maxima over the supplied probes, so they bound
/// the analytic suprema from below.
struct RegularityReport {
    double sup_value = 0.0;
    double sup_directional = 0.0;
    double sup_fine = 0.0;
    bool fine_available = false;
    double composite() const { return sup_value + sup_directional + sup_fine; }
};

RegularityReport regularity_norms(const PathVectorField& V,
                                  std::span<const StoppedPath> probes,
                                  std::span<const std::vector<double>> directions);

}  // namespace roughflow
