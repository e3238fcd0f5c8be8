#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace roughflow {

/// Shape of the truncated tensor algebra over R^ell: coefficients are kept
/// for all words of length 0..depth in the letters {1..ell}.
struct TensorShape {
    int alphabet_size = 1;  // ell
    int depth = 1;          // supported range 1..5

    TensorShape() = default;
    TensorShape(int alphabet_size, int depth);

    bool operator==(const TensorShape&) const = default;

    /// Number of coefficients at one level: ell^n.
    std::size_t level_size(int n) const;
    /// Offset of level n inside the flat coefficient buffer.
    std::size_t level_offset(int n) const;
    /// Total coefficient count, sum of ell^n for n = 0..depth.
    std::size_t total_size() const;
};

/// Dense element of the truncated tensor algebra. Level n is stored as a
/// flat array of length ell^n indexed by words (i1,...,in), i_k in {1..ell},
/// with i1 the most significant digit.
class TensorElement {
public:
    TensorElement() = default;
    explicit TensorElement(TensorShape shape);

    const TensorShape& shape() const { return shape_; }
    int depth() const { return shape_.depth; }
    int alphabet_size() const { return shape_.alphabet_size; }

    std::span<double> level(int n);
    std::span<const double> level(int n) const;
    double scalar() const { return coeffs_[0]; }
    double& scalar() { return coeffs_[0]; }

    /// Coefficient of the word given by 1-based letters.
    double coeff(std::span<const int> word) const;
    double& coeff(std::span<const int> word);
    double coeff(std::initializer_list<int> word) const;
    double& coeff(std::initializer_list<int> word);

    std::span<const double> coeffs() const { return coeffs_; }
    std::span<double> coeffs() { return coeffs_; }

    /// Max-abs coefficient over all levels.
    double max_norm() const;
    /// Max-abs over levels 1..depth (ignores the scalar slot).
    double max_norm_positive_levels() const;

    /// Copy truncated (or zero-extended) to a new depth.
    TensorElement truncated(int new_depth) const;

    TensorElement& operator+=(const TensorElement& other);
    TensorElement& operator-=(const TensorElement& other);
    TensorElement& operator*=(double c);

    static TensorElement zero(TensorShape shape) { return TensorElement(shape); }
    /// Multiplicative unit (1, 0, 0, ...).
    static TensorElement unit(TensorShape shape);
    /// The letter e_i placed at level 1.
    static TensorElement letter(TensorShape shape, int i);
    /// A level-1 element with the given ell coefficients.
    static TensorElement from_level1(TensorShape shape, std::span<const double> x);

private:
    TensorShape shape_;
    std::vector<double> coeffs_;
};

/// Truncated tensor product. Levels above shape.depth are discarded.
TensorElement tensor_mul(const TensorElement& a, const TensorElement& b);

/// exp of an element with zero scalar part. Finite sum: the argument is
/// nilpotent under truncation.
TensorElement tensor_exp(const TensorElement& a);

/// log of an element with scalar part 1; inverse of tensor_exp.
TensorElement tensor_log(const TensorElement& g);

/// Group inverse of an element with scalar part 1.
TensorElement tensor_inverse(const TensorElement& g);

/// Commutator a*b - b*a.
TensorElement tensor_bracket(const TensorElement& a, const TensorElement& b);

/// Right-nested bracket [e_{i1},[e_{i2},...[e_{i_{r-1}},e_{i_r}]...]]
/// expanded into tensor coordinates. Letters are 1-based.
TensorElement bracket_word_expansion(TensorShape shape, std::span<const int> word);

/// Lyndon words of length 1..depth over {1..ell} with their standard
/// factorizations, and the expansion of each bracketed word in tensor
/// coordinates. Words are ordered by (length, lexicographic); the expansion
/// of word w has coefficient 1 on w itself and nonzero coefficients only on
/// lexicographically larger words of the same length, which makes the
/// change of basis triangular.
class LyndonBasis {
public:
    explicit LyndonBasis(TensorShape shape);

    const TensorShape& shape() const { return shape_; }
    std::size_t size() const { return words_.size(); }

    const std::vector<int>& word(std::size_t k) const { return words_[k]; }
    const TensorElement& expansion(std::size_t k) const { return expansions_[k]; }

    /// Standard factorization of word k as indices into this basis, or
    /// {-1,-1} for single letters.
    std::pair<int, int> factors(std::size_t k) const { return factors_[k]; }

    /// Count of basis words of a given length (free Lie algebra dimension
    /// at that level, by necklace counting).
    std::size_t words_at_level(int n) const;

private:
    TensorShape shape_;
    std::vector<std::vector<int>> words_;
    std::vector<TensorElement> expansions_;
    std::vector<std::pair<int, int>> factors_;
};

struct LyndonCoords {
    std::vector<double> coeffs;  // one per basis word
    double residual = 0.0;       // max-abs of what the basis could not absorb
};

/// Coordinates of a Lie element in the Lyndon basis, solved level by level
/// through the triangular change of basis. Throws NotLieElementError when
/// the residual exceeds rel_tol * max(1, |lie|), and std::invalid_argument
/// when the scalar part is nonzero. Pass rel_tol = infinity to always get
/// the projection and residual back.
LyndonCoords lyndon_coords(const TensorElement& lie, const LyndonBasis& basis,
                           double rel_tol = 1e-9);

/// One line per nonzero coefficient: "I=<i1.i2...ik> value=<decimal>",
/// levels ascending, tuples lexicographic within a level.
void dump_tensor(std::ostream& os, const TensorElement& t);
std::string dump_tensor(const TensorElement& t);

}  // namespace roughflow
