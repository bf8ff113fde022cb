#pragma once

// Test-only reference computations. Nothing here calls the library's
// arithmetic tables or its eliminator.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

/// GF(p^e) by schoolbook polynomial arithmetic on coefficient vectors,
/// using the same base-p index encoding as the library.
class PolyField {
 public:
  PolyField(unsigned p, std::vector<unsigned> monic) : p_(p), f_(std::move(monic)), e_(static_cast<unsigned>(f_.size() - 1)) {
    q_ = 1;
    for (unsigned i = 0; i < e_; ++i) q_ *= p_;
  }

  unsigned order() const { return q_; }
  unsigned characteristic() const { return p_; }

  std::vector<long long> digits(unsigned a) const {
    std::vector<long long> d(e_);
    for (unsigned i = 0; i < e_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  unsigned encode(const std::vector<long long>& d) const {
    unsigned r = 0;
    for (std::size_t i = d.size(); i-- > 0;) r = r * p_ + static_cast<unsigned>(((d[i] % p_) + p_) % p_);
    return r;
  }

  unsigned add(unsigned a, unsigned b) const {
    auto da = digits(a), db = digits(b);
    for (unsigned i = 0; i < e_; ++i) da[i] += db[i];
    return encode(da);
  }

  unsigned sub(unsigned a, unsigned b) const {
    auto da = digits(a), db = digits(b);
    for (unsigned i = 0; i < e_; ++i) da[i] -= db[i];
    return encode(da);
  }

  unsigned mul(unsigned a, unsigned b) const {
    auto da = digits(a), db = digits(b);
    std::vector<long long> prod(2 * e_ + 1, 0);
    for (unsigned i = 0; i < e_; ++i)
      for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    // reduce with t^e = -(f_0 + ... + f_{e-1} t^{e-1})
    for (std::size_t k = prod.size(); k-- > e_;) {
      const long long c = prod[k] % p_;
      if (c == 0) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < e_; ++i) prod[k - e_ + i] = ((prod[k - e_ + i] - c * f_[i]) % p_ + p_) % p_;
    }
    prod.resize(e_);
    return encode(prod);
  }

  unsigned inv(unsigned a) const {
    for (unsigned b = 1; b < q_; ++b)
      if (mul(a, b) == 1) return b;
    return 0;
  }

  unsigned pow(unsigned a, unsigned long long n) const {
    unsigned r = 1;
    for (unsigned long long i = 0; i < n; ++i) r = mul(r, a);
    return r;
  }

 private:
  unsigned p_;
  std::vector<unsigned> f_;
  unsigned e_;
  unsigned q_;
};

/// Rank by incremental basis insertion: each row is reduced against the
/// stored basis vectors keyed by their leading column, then stored if nonzero.
inline std::size_t rank_by_insertion(const PolyField& F, const std::vector<std::vector<unsigned>>& rows) {
  std::map<std::size_t, std::vector<unsigned>> basis;  // leading column -> monic vector
  for (auto v : rows) {
    for (;;) {
      std::size_t lead = v.size();
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
          lead = i;
          break;
        }
      if (lead == v.size()) break;
      auto it = basis.find(lead);
      if (it == basis.end()) {
        const unsigned s = F.inv(v[lead]);
        for (auto& x : v) x = F.mul(x, s);
        basis.emplace(lead, std::move(v));
        break;
      }
      const unsigned factor = v[lead];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(v[i], F.mul(factor, it->second[i]));
    }
  }
  return basis.size();
}

inline std::size_t rank_mod_p(unsigned p, const std::vector<std::vector<unsigned>>& rows) {
  return rank_by_insertion(PolyField(p, {0, 1}), rows);
}

/// Vertex-edge incidence of K_n: one row per edge {i, j}, i < j.
inline std::vector<std::vector<unsigned>> complete_graph_incidence(std::size_t n) {
  std::vector<std::vector<unsigned>> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<unsigned> r(n, 0);
      r[i] = r[j] = 1;
      rows.push_back(r);
    }
  return rows;
}

/// {x^2 : x != 0} by enumeration.
inline std::set<unsigned> nonzero_squares(const PolyField& F) {
  std::set<unsigned> s;
  for (unsigned x = 1; x < F.order(); ++x) s.insert(F.mul(x, x));
  return s;
}

inline unsigned long long binom(unsigned long long n, unsigned long long k) {
  unsigned long long r = 1;
  for (unsigned long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
