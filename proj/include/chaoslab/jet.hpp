#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace chaoslab {

struct singular_evaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// cap for caller-requested jet orders; internal recursions (the G_k chain)
// build deeper spaces through JetSpace::get, bounded by the memory budget
struct JetConfig {
    static inline int max_user_order = 6;
};

// Shared enumeration of the multi-indices of a (dim, order) truncated Taylor
// algebra, plus a precomputed triple list (i, j, k) with midx[i] + midx[j] =
// midx[k] used by the product kernel.
class JetSpace {
public:
    static std::shared_ptr<const JetSpace> get(int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    std::size_t size() const { return midx_.size(); }
    const std::vector<int>& multi_index(std::size_t i) const { return midx_[i]; }
    int degree(std::size_t i) const { return degree_[i]; }
    // position of a multi-index; throws if |alpha| exceeds the order
    std::size_t rank(const std::vector<int>& alpha) const;

    struct Triple {
        std::uint32_t a, b, c;
    };
    const std::vector<Triple>& product_triples() const { return triples_; }
    // index of multi_index(i) + e_k, or npos if that leaves the space
    std::size_t shift_up(std::size_t i, int var) const { return shift_up_[i * dim_ + var]; }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // memory guard shared by all spaces (count of coefficients)
    static inline std::size_t max_coefficients = 10'000'000;

private:
    JetSpace(int dim, int order);
    int dim_, order_;
    std::vector<std::vector<int>> midx_;
    std::vector<int> degree_;
    std::vector<std::size_t> shift_up_;
    std::vector<Triple> triples_;
    std::unordered_map<std::uint64_t, std::size_t> pos_;
};

// Dense truncated multivariate Taylor expansion (coefficients, not raw
// derivatives: c_alpha = d^alpha f / alpha!).
class Jet {
public:
    Jet() = default;
    Jet(std::shared_ptr<const JetSpace> space, double value = 0.0);

    static Jet constant(std::shared_ptr<const JetSpace> space, double v);
    static Jet coordinate(std::shared_ptr<const JetSpace> space, int var, double x);
    static Jet from_coefficients(std::shared_ptr<const JetSpace> space, std::vector<double> coeffs);

    const JetSpace& space() const { return *space_; }
    std::shared_ptr<const JetSpace> space_ptr() const { return space_; }
    int order() const { return space_->order(); }
    int dim() const { return space_->dim(); }

    double value() const { return c_[0]; }
    const std::vector<double>& coefficients() const { return c_; }
    double coefficient(const std::vector<int>& alpha) const;
    // raw partial derivative d^alpha f (coefficient times alpha!)
    double derivative(const std::vector<int>& alpha) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { a.c_[0] += s; return a; }
    friend Jet operator-(Jet a, double s) { a.c_[0] -= s; return a; }

    Jet mul(const Jet& o) const;               // truncated product, same space
    friend Jet operator*(const Jet& a, const Jet& b) { return a.mul(b); }
    Jet reciprocal() const;                    // Newton iteration; guards value
    friend Jet operator/(const Jet& a, const Jet& b) { return a.mul(b.reciprocal()); }
    Jet pow(int k) const;                      // k >= 0

    // jet of df/dvar in the (dim, order-1) space
    Jet partial(int var) const;
    // restriction to a lower order (drops higher coefficients)
    Jet truncated(int order) const;

private:
    std::shared_ptr<const JetSpace> space_;
    std::vector<double> c_;
};

} // namespace chaoslab
