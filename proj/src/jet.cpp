#include "chaoslab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

namespace chaoslab {

namespace {

void enumerate_rec(int dim, int order, std::vector<int>& cur, int pos, int left,
                   std::vector<std::vector<int>>& out) {
    if (pos == dim) {
        out.push_back(cur);
        return;
    }
    for (int a = 0; a <= left; ++a) {
        cur[pos] = a;
        enumerate_rec(dim, order, cur, pos + 1, left - a, out);
    }
    cur[pos] = 0;
}

std::uint64_t pack(const std::vector<int>& alpha) {
    std::uint64_t key = 0;
    for (int a : alpha) key = key * 131ULL + static_cast<std::uint64_t>(a + 1);
    return key;
}

} // namespace

JetSpace::JetSpace(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1) throw std::invalid_argument("JetSpace: dim < 1");
    if (order < 0) throw std::invalid_argument("JetSpace: order < 0");
    // enumerate by total degree, stable order within a degree
    std::vector<std::vector<int>> all;
    std::vector<int> cur(dim, 0);
    enumerate_rec(dim, order, cur, 0, order, all);
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        return da < db;
    });
    midx_ = std::move(all);
    if (midx_.size() > max_coefficients)
        throw std::invalid_argument("JetSpace: coefficient table exceeds memory budget");
    degree_.resize(midx_.size());
    pos_.reserve(midx_.size() * 2);
    for (std::size_t i = 0; i < midx_.size(); ++i) {
        int d = 0;
        for (int x : midx_[i]) d += x;
        degree_[i] = d;
        pos_[pack(midx_[i])] = i;
    }
    auto& pos = pos_;
    shift_up_.assign(midx_.size() * dim_, npos);
    for (std::size_t i = 0; i < midx_.size(); ++i) {
        if (degree_[i] == order_) continue;
        std::vector<int> a = midx_[i];
        for (int v = 0; v < dim_; ++v) {
            ++a[v];
            shift_up_[i * dim_ + v] = pos.at(pack(a));
            --a[v];
        }
    }
    // product triples
    std::vector<int> sum(dim);
    for (std::size_t i = 0; i < midx_.size(); ++i) {
        for (std::size_t j = 0; j < midx_.size(); ++j) {
            if (degree_[i] + degree_[j] > order_) continue;
            for (int v = 0; v < dim_; ++v) sum[v] = midx_[i][v] + midx_[j][v];
            triples_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                static_cast<std::uint32_t>(pos.at(pack(sum)))});
        }
    }
}

std::size_t JetSpace::rank(const std::vector<int>& alpha) const {
    auto it = pos_.find(pack(alpha));
    if (it == pos_.end()) throw std::out_of_range("JetSpace::rank: multi-index not in space");
    return it->second;
}

std::shared_ptr<const JetSpace> JetSpace::get(int dim, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto sp = std::shared_ptr<const JetSpace>(new JetSpace(dim, order));
    cache[key] = sp;
    return sp;
}

Jet::Jet(std::shared_ptr<const JetSpace> space, double value)
    : space_(std::move(space)), c_(space_->size(), 0.0) {
    c_[0] = value;
}

Jet Jet::constant(std::shared_ptr<const JetSpace> space, double v) { return Jet(std::move(space), v); }

Jet Jet::from_coefficients(std::shared_ptr<const JetSpace> space, std::vector<double> coeffs) {
    if (coeffs.size() != space->size())
        throw std::invalid_argument("Jet::from_coefficients: size mismatch");
    Jet j(space, 0.0);
    j.c_ = std::move(coeffs);
    return j;
}

Jet Jet::coordinate(std::shared_ptr<const JetSpace> space, int var, double x) {
    Jet j(std::move(space), x);
    if (j.order() >= 1) {
        std::vector<int> e(j.dim(), 0);
        e[var] = 1;
        j.c_[j.space().rank(e)] = 1.0;
    }
    return j;
}

double Jet::coefficient(const std::vector<int>& alpha) const {
    return c_[space_->rank(alpha)];
}

double Jet::derivative(const std::vector<int>& alpha) const {
    double fact = 1.0;
    for (int a : alpha)
        for (int i = 2; i <= a; ++i) fact *= i;
    return coefficient(alpha) * fact;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    if (space_ != o.space_) throw std::invalid_argument("Jet: mixed spaces in +");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (space_ != o.space_) throw std::invalid_argument("Jet: mixed spaces in -");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Jet Jet::mul(const Jet& o) const {
    if (space_ != o.space_) throw std::invalid_argument("Jet: mixed spaces in *");
    Jet r(space_, 0.0);
    r.c_[0] = 0.0;
    const auto& ts = space_->product_triples();
    const double* a = c_.data();
    const double* b = o.c_.data();
    double* out = r.c_.data();
    for (const auto& t : ts) out[t.c] += a[t.a] * b[t.b];
    return r;
}

Jet Jet::reciprocal() const {
    if (std::fabs(c_[0]) <= 1e-300)
        throw singular_evaluation("jet reciprocal: value part is zero");
    Jet r(space_, 1.0 / c_[0]);
    int correct = 0; // orders of accuracy achieved
    while (correct < order()) {
        // r <- r (2 - a r)
        Jet ar = mul(r);
        ar *= -1.0;
        ar.c_[0] += 2.0;
        r = r.mul(ar);
        correct = correct * 2 + 1;
    }
    return r;
}

Jet Jet::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Jet::pow: negative exponent");
    Jet acc = Jet::constant(space_, 1.0);
    Jet base = *this;
    while (k > 0) {
        if (k & 1) acc = acc.mul(base);
        k >>= 1;
        if (k > 0) base = base.mul(base);
    }
    return acc;
}

// The degree-sorted enumeration of a lower-order space is a prefix of the
// higher-order one, so positions coincide for shared multi-indices.
Jet Jet::partial(int var) const {
    if (order() < 1) throw std::invalid_argument("Jet::partial: order 0 jet");
    auto lower = JetSpace::get(dim(), order() - 1);
    Jet r(lower, 0.0);
    for (std::size_t i = 0; i < lower->size(); ++i) {
        const std::size_t up = space_->shift_up(i, var);
        const int count = lower->multi_index(i)[var] + 1;
        r.c_[i] = c_[up] * count;
    }
    return r;
}

Jet Jet::truncated(int order) const {
    if (order > this->order()) throw std::invalid_argument("Jet::truncated: order increase");
    if (order == this->order()) return *this;
    auto lower = JetSpace::get(dim(), order);
    Jet r(lower, 0.0);
    for (std::size_t i = 0; i < lower->size(); ++i) r.c_[i] = c_[i];
    return r;
}

} // namespace chaoslab
