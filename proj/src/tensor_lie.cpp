#include "roughflow/tensor_lie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "roughflow/errors.hpp"
#include "roughflow/util.hpp"

namespace roughflow {

namespace {

constexpr int kMaxDepth = 5;

void check_same_shape(const TensorElement& a, const TensorElement& b, const char* op) {
    if (!(a.shape() == b.shape()))
        throw std::invalid_argument(std::string(op) + ": tensor shape mismatch");
}

}  // namespace

TensorShape::TensorShape(int alphabet_size, int depth)
    : alphabet_size(alphabet_size), depth(depth) {
    if (alphabet_size < 1) throw std::invalid_argument("TensorShape: alphabet_size must be >= 1");
    if (depth < 1) throw std::invalid_argument("TensorShape: depth must be >= 1");
    if (depth > kMaxDepth)
        throw std::invalid_argument("TensorShape: depth " + std::to_string(depth) +
                                    " exceeds supported maximum " + std::to_string(kMaxDepth));
}

std::size_t TensorShape::level_size(int n) const {
    std::size_t s = 1;
    for (int k = 0; k < n; ++k) s *= static_cast<std::size_t>(alphabet_size);
    return s;
}

std::size_t TensorShape::level_offset(int n) const {
    std::size_t off = 0;
    for (int k = 0; k < n; ++k) off += level_size(k);
    return off;
}

std::size_t TensorShape::total_size() const { return level_offset(depth + 1); }

TensorElement::TensorElement(TensorShape shape)
    : shape_(shape), coeffs_(shape.total_size(), 0.0) {}

std::span<double> TensorElement::level(int n) {
    return {coeffs_.data() + shape_.level_offset(n), shape_.level_size(n)};
}

std::span<const double> TensorElement::level(int n) const {
    return {coeffs_.data() + shape_.level_offset(n), shape_.level_size(n)};
}

double TensorElement::coeff(std::span<const int> word) const {
    return const_cast<TensorElement*>(this)->coeff(word);
}

double& TensorElement::coeff(std::span<const int> word) {
    const int n = static_cast<int>(word.size());
    if (n > shape_.depth) throw std::invalid_argument("coeff: word longer than depth");
    std::size_t idx = 0;
    for (int letter : word) {
        if (letter < 1 || letter > shape_.alphabet_size)
            throw std::invalid_argument("coeff: letter out of alphabet");
        idx = idx * shape_.alphabet_size + static_cast<std::size_t>(letter - 1);
    }
    return coeffs_[shape_.level_offset(n) + idx];
}

double TensorElement::coeff(std::initializer_list<int> word) const {
    return coeff(std::span<const int>(word.begin(), word.size()));
}

double& TensorElement::coeff(std::initializer_list<int> word) {
    return coeff(std::span<const int>(word.begin(), word.size()));
}

double TensorElement::max_norm() const { return sup_abs(coeffs_); }

double TensorElement::max_norm_positive_levels() const {
    return sup_abs(std::span<const double>(coeffs_.data() + 1, coeffs_.size() - 1));
}

TensorElement TensorElement::truncated(int new_depth) const {
    TensorElement out(TensorShape(shape_.alphabet_size, new_depth));
    const int copy_depth = std::min(new_depth, shape_.depth);
    for (int n = 0; n <= copy_depth; ++n) {
        auto src = level(n);
        auto dst = out.level(n);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
    check_same_shape(*this, other, "tensor add");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
    check_same_shape(*this, other, "tensor sub");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

TensorElement& TensorElement::operator*=(double c) {
    for (double& x : coeffs_) x *= c;
    return *this;
}

TensorElement TensorElement::unit(TensorShape shape) {
    TensorElement t(shape);
    t.scalar() = 1.0;
    return t;
}

TensorElement TensorElement::letter(TensorShape shape, int i) {
    if (i < 1 || i > shape.alphabet_size)
        throw std::invalid_argument("letter: index out of alphabet");
    TensorElement t(shape);
    t.level(1)[static_cast<std::size_t>(i - 1)] = 1.0;
    return t;
}

TensorElement TensorElement::from_level1(TensorShape shape, std::span<const double> x) {
    if (static_cast<int>(x.size()) != shape.alphabet_size)
        throw std::invalid_argument("from_level1: coefficient count != alphabet size");
    TensorElement t(shape);
    auto l1 = t.level(1);
    std::copy(x.begin(), x.end(), l1.begin());
    return t;
}

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b) {
    check_same_shape(a, b, "tensor_mul");
    const TensorShape& sh = a.shape();
    TensorElement out(sh);
    for (int j = 0; j <= sh.depth; ++j) {
        auto la = a.level(j);
        bool ja_zero = true;
        for (double x : la)
            if (x != 0.0) { ja_zero = false; break; }
        if (ja_zero) continue;
        for (int k = 0; j + k <= sh.depth; ++k) {
            auto lb = b.level(k);
            auto lc = out.level(j + k);
            const std::size_t nb = lb.size();
            // word concat is index arithmetic: idx(uv) = idx(u)*ell^|v| + idx(v)
            for (std::size_t ia = 0; ia < la.size(); ++ia) {
                const double va = la[ia];
                if (va == 0.0) continue;
                double* dst = lc.data() + ia * nb;
                for (std::size_t ib = 0; ib < nb; ++ib) dst[ib] += va * lb[ib];
            }
        }
    }
    return out;
}

TensorElement tensor_exp(const TensorElement& a) {
    if (a.scalar() != 0.0)
        throw std::invalid_argument("tensor_exp: argument has nonzero scalar part");
    const TensorShape& sh = a.shape();
    TensorElement result = TensorElement::unit(sh);
    TensorElement power = TensorElement::unit(sh);
    double factorial = 1.0;
    for (int k = 1; k <= sh.depth; ++k) {
        power = tensor_mul(power, a);
        factorial *= k;
        TensorElement term = power;
        term *= 1.0 / factorial;
        result += term;
    }
    return result;
}

TensorElement tensor_log(const TensorElement& g) {
    if (std::abs(g.scalar() - 1.0) > 1e-9)
        throw std::invalid_argument("tensor_log: argument scalar part is not 1");
    const TensorShape& sh = g.shape();
    TensorElement u = g;
    u.scalar() -= 1.0;
    TensorElement result(sh);
    TensorElement power = TensorElement::unit(sh);
    double sign = 1.0;
    for (int k = 1; k <= sh.depth; ++k) {
        power = tensor_mul(power, u);
        TensorElement term = power;
        term *= sign / k;
        result += term;
        sign = -sign;
    }
    return result;
}

TensorElement tensor_inverse(const TensorElement& g) {
    if (std::abs(g.scalar() - 1.0) > 1e-9)
        throw std::invalid_argument("tensor_inverse: argument scalar part is not 1");
    const TensorShape& sh = g.shape();
    TensorElement u = g;  // u = g - 1, nilpotent
    u.scalar() -= 1.0;
    TensorElement result = TensorElement::unit(sh);
    TensorElement power = TensorElement::unit(sh);
    double sign = -1.0;
    for (int k = 1; k <= sh.depth; ++k) {
        power = tensor_mul(power, u);
        TensorElement term = power;
        term *= sign;
        result += term;
        sign = -sign;
    }
    return result;
}

TensorElement tensor_bracket(const TensorElement& a, const TensorElement& b) {
    TensorElement ab = tensor_mul(a, b);
    ab -= tensor_mul(b, a);
    return ab;
}

TensorElement bracket_word_expansion(TensorShape shape, std::span<const int> word) {
    const int r = static_cast<int>(word.size());
    if (r < 1 || r > shape.depth)
        throw std::invalid_argument("bracket_word_expansion: word length out of range 1..depth");
    for (int letter : word)
        if (letter < 1 || letter > shape.alphabet_size)
            throw std::invalid_argument("bracket_word_expansion: letter out of alphabet");
    TensorElement acc = TensorElement::letter(shape, word[r - 1]);
    for (int k = r - 2; k >= 0; --k)
        acc = tensor_bracket(TensorElement::letter(shape, word[k]), acc);
    return acc;
}

namespace {

bool is_lyndon(std::span<const int> w) {
    // strictly smaller than every proper suffix
    const std::size_t n = w.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (std::lexicographical_compare(w.begin() + i, w.end(), w.begin(), w.end()) ||
            std::equal(w.begin() + i, w.end(), w.begin(), w.begin() + (n - i)))
            return false;
    }
    return true;
}

}  // namespace

LyndonBasis::LyndonBasis(TensorShape shape) : shape_(shape) {
    const int ell = shape.alphabet_size;
    const int n = shape.depth;

    // Duval's generation: Lyndon words of length <= n, lexicographic order.
    std::vector<std::vector<int>> raw;
    std::vector<int> w = {1};
    raw.push_back(w);
    while (true) {
        const std::size_t m = w.size();
        w.resize(n);
        for (std::size_t i = m; i < static_cast<std::size_t>(n); ++i) w[i] = w[i - m];
        while (!w.empty() && w.back() == ell) w.pop_back();
        if (w.empty()) break;
        ++w.back();
        raw.push_back(w);
    }
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    words_ = std::move(raw);

    // index lookup for factor resolution
    auto find_word = [&](std::span<const int> v) -> int {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (words_[k].size() == v.size() &&
                std::equal(v.begin(), v.end(), words_[k].begin()))
                return static_cast<int>(k);
        }
        return -1;
    };

    factors_.resize(words_.size(), {-1, -1});
    expansions_.reserve(words_.size());
    for (std::size_t k = 0; k < words_.size(); ++k) {
        const auto& word = words_[k];
        if (word.size() == 1) {
            expansions_.push_back(TensorElement::letter(shape_, word[0]));
            continue;
        }
        // standard factorization w = uv, v the longest proper Lyndon suffix
        std::size_t split = 0;
        for (std::size_t i = 1; i < word.size(); ++i) {
            if (is_lyndon(std::span<const int>(word.data() + i, word.size() - i))) {
                split = i;
                break;
            }
        }
        const int ui = find_word({word.data(), split});
        const int vi = find_word({word.data() + split, word.size() - split});
        factors_[k] = {ui, vi};
        expansions_.push_back(tensor_bracket(expansions_[ui], expansions_[vi]));
    }
}

std::size_t LyndonBasis::words_at_level(int n) const {
    std::size_t c = 0;
    for (const auto& w : words_)
        if (static_cast<int>(w.size()) == n) ++c;
    return c;
}

LyndonCoords lyndon_coords(const TensorElement& lie, const LyndonBasis& basis,
                           double rel_tol) {
    if (!(lie.shape() == basis.shape()))
        throw std::invalid_argument("lyndon_coords: shape mismatch with basis");
    if (std::abs(lie.scalar()) > 1e-12)
        throw std::invalid_argument("lyndon_coords: element has nonzero scalar part");

    LyndonCoords out;
    out.coeffs.assign(basis.size(), 0.0);
    TensorElement residual = lie;

    // Expansion of word w is w plus lexicographically larger words of the
    // same length, so peeling words in increasing lex order within a level
    // is an exact triangular solve.
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto& w = basis.word(k);
        const double c = residual.coeff(std::span<const int>(w.data(), w.size()));
        out.coeffs[k] = c;
        if (c != 0.0) {
            TensorElement scaled = basis.expansion(k);
            scaled *= c;
            residual -= scaled;
        }
    }
    out.residual = residual.max_norm();

    const double scale = std::max(1.0, lie.max_norm());
    if (out.residual > rel_tol * scale)
        throw NotLieElementError(
            "lyndon_coords: not a Lie element (residual " + format_double(out.residual) + ")",
            out.residual);
    return out;
}

void dump_tensor(std::ostream& os, const TensorElement& t) {
    const TensorShape& sh = t.shape();
    std::vector<int> word;
    for (int n = 0; n <= sh.depth; ++n) {
        auto ln = t.level(n);
        for (std::size_t idx = 0; idx < ln.size(); ++idx) {
            if (ln[idx] == 0.0) continue;
            word.assign(n, 1);
            std::size_t rem = idx;
            for (int j = n - 1; j >= 0; --j) {
                word[j] = static_cast<int>(rem % sh.alphabet_size) + 1;
                rem /= sh.alphabet_size;
            }
            os << "I=";
            for (int j = 0; j < n; ++j) {
                if (j) os << '.';
                os << word[j];
            }
            os << " value=" << format_double(ln[idx]) << '\n';
        }
    }
}

std::string dump_tensor(const TensorElement& t) {
    std::ostringstream os;
    dump_tensor(os, t);
    return os.str();
}

}  // namespace roughflow
