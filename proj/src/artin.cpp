#include "artin/artin.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace artin {

namespace {

void require_scope(const GroupSpec& spec, bool allow_small_labels) {
  if (!spec.is_extra_large() && !allow_small_labels)
    throw Error(ErrorKind::scope, "group is not extra-large (some m_ij < 4)");
}

int sign(int e) { return e > 0 ? 1 : -1; }

// Calls `fn` on every violation in scan order until it returns true.
void scan(const Word& w, const GroupSpec& spec, const ScanOptions& opt,
          const std::function<bool(const Violation&)>& fn) {
  if (opt.k < 0) throw Error(ErrorKind::argument, "scan level must be nonnegative");
  require_scope(spec, opt.allow_small_labels);
  const auto& syl = w.syllables();
  const std::size_t n = syl.size();
  for (const auto& s : syl) spec.check_generator(s.gen);

  auto try_span = [&](const SyllableSpan& sp, const DihedralPair& pair) {
    Word v = subword(w, sp);
    auto u = relator_completion(v, pair, opt.k);
    if (!u) return false;
    return fn(Violation{sp, pair, *u});
  };

  for (std::size_t a = 0; a < n; ++a) {
    const int sa = sign(syl[a].exp);
    std::optional<DihedralPair> pair;
    std::size_t run_end = a;
    if (a + 1 < n) {
      Label lab = spec.label(syl[a].gen, syl[a + 1].gen);
      if (lab.is_finite()) {
        pair = dihedral_pair(syl[a].gen, syl[a + 1].gen, lab.value());
        while (run_end + 1 < n && pair->contains(syl[run_end + 1].gen)) ++run_end;
      }
    }
    for (int ta = std::abs(syl[a].exp); ta >= 1; --ta) {
      if (pair) {
        for (std::size_t b = run_end; b > a; --b) {
          const int sb = sign(syl[b].exp);
          for (int tb = std::abs(syl[b].exp); tb >= 1; --tb)
            if (try_span({a, b, sa * ta, sb * tb}, *pair)) return;
        }
      }
      // a piece of a single syllable: every pair through that generator
      for (Gen other = 1; other <= spec.rank(); ++other) {
        if (other == syl[a].gen) continue;
        Label lab = spec.label(syl[a].gen, other);
        if (lab.is_infinite()) continue;
        if (try_span({a, a, sa * ta, sa * ta}, dihedral_pair(syl[a].gen, other, lab.value())))
          return;
      }
    }
  }
}

Word apply_step(const Word& w, const Violation& v) {
  auto [prefix, suffix] = split_around(w, v.span);
  return prefix * v.completion.inverse() * suffix;
}

}  // namespace

std::optional<Violation> find_violation(const Word& w, const GroupSpec& spec,
                                        const ScanOptions& options) {
  std::optional<Violation> out;
  scan(w, spec, options, [&](const Violation& v) {
    out = v;
    return true;
  });
  return out;
}

std::vector<Violation> all_violations(const Word& w, const GroupSpec& spec,
                                      const ScanOptions& options, std::size_t limit) {
  std::vector<Violation> out;
  scan(w, spec, options, [&](const Violation& v) {
    out.push_back(v);
    return limit > 0 && out.size() >= limit;
  });
  return out;
}

bool is_artin_reduced(const Word& w, const GroupSpec& spec, bool allow_small_labels) {
  return !find_violation(w, spec, {3, allow_small_labels});
}

bool is_strongly_artin_reduced(const Word& w, const GroupSpec& spec, bool allow_small_labels) {
  return !find_violation(w, spec, {4, allow_small_labels});
}

DehnResult dehn_solve(const Word& w, const GroupSpec& spec, bool allow_small_labels) {
  require_scope(spec, allow_small_labels);
  DehnResult res;
  Word cur = w;
  while (!cur.empty()) {
    bool any = false;
    std::optional<ReductionStep> step;
    scan(cur, spec, {3, allow_small_labels}, [&](const Violation& v) {
      any = true;
      Word next = apply_step(cur, v);
      if (next.syllable_length() >= cur.syllable_length()) return false;
      step = ReductionStep{cur, v, std::move(next)};
      return true;
    });
    if (!step) {
      res.verdict = any ? Verdict::stalled : Verdict::nontrivial;
      res.residual = cur;
      return res;
    }
    const Violation& v = step->violation;
    if (!in_Rij(subword(cur, v.span) * v.completion, v.pair))
      throw Error(ErrorKind::internal, "reduction step does not come from a relator");
    cur = step->after;
    res.trace.push_back(std::move(*step));
  }
  res.verdict = Verdict::trivial;
  return res;
}

bool equal_in_G(const Word& w1, const Word& w2, const GroupSpec& spec, bool allow_small_labels) {
  DehnResult r = dehn_solve(w1 * w2.inverse(), spec, allow_small_labels);
  if (r.verdict == Verdict::stalled)
    throw Error(ErrorKind::scope, "word problem solver stalled on " + r.residual.str());
  return r.verdict == Verdict::trivial;
}

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((unsigned __int128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (a %= p; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

bool is_prime(u64 x) {
  if (x < 2) return false;
  for (u64 d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

u64 primitive_root(u64 p) {
  std::vector<u64> factors;
  u64 q = p - 1;
  for (u64 d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      factors.push_back(d);
      while (q % d == 0) q /= d;
    }
  if (q > 1) factors.push_back(q);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 f : factors) ok = ok && powmod(g, (p - 1) / f, p) != 1;
    if (ok) return g;
  }
}

}  // namespace

CoxeterImage::CoxeterImage(const GroupSpec& spec)
    : n_(spec.rank()), classes_(spec.abelian_classes()), class_count_(spec.abelian_class_count()) {
  u64 l = 2;
  for (auto [i, j] : spec.finite_pairs()) l = std::lcm(l, u64(2 * spec.label(i, j).value()));
  if (l > (u64(1) << 24)) throw Error(ErrorKind::argument, "labels too large for the hash image");
  u64 p = l + 1;
  while (p < 1000 || !is_prime(p)) p += l;
  p_ = p;
  const u64 g = primitive_root(p);
  const u64 inv2 = (p + 1) / 2;
  auto bilinear = [&](Gen i, Gen j) -> u64 {
    if (i == j) return 1;
    Label lab = spec.label(i, j);
    if (lab.is_infinite()) return p - 1;
    u64 z = powmod(g, (p - 1) / (2 * lab.value()), p);
    u64 c = mulmod((z + powmod(z, p - 2, p)) % p, inv2, p);
    return (p - c) % p;
  };
  gens_.resize(n_);
  for (Gen i = 1; i <= n_; ++i) {
    auto& m = gens_[i - 1];
    m.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (int r = 0; r < n_; ++r) m[r * n_ + r] = 1;
    // sigma_i(e_j) = e_j - 2 B(e_i, e_j) e_i: only row i differs from I
    for (Gen j = 1; j <= n_; ++j) {
      u64 b2 = mulmod(2, bilinear(i, j), p);
      m[(i - 1) * n_ + (j - 1)] = ((i == j ? 1 : 0) + p - b2) % p;
    }
  }
}

std::vector<u64> CoxeterImage::matrix(const Word& w) const {
  std::vector<u64> m(static_cast<std::size_t>(n_) * n_, 0);
  for (int r = 0; r < n_; ++r) m[r * n_ + r] = 1;
  std::vector<u64> col(n_);
  for (const auto& s : w.syllables()) {
    if (s.gen < 1 || s.gen > n_) throw Error(ErrorKind::argument, "generator out of range");
    if (s.exp % 2 == 0) continue;
    // M <- M * S_i; only column i changes: M[r][c] += M[r][i] * (S[i][c] - delta_ic)
    const auto& sg = gens_[s.gen - 1];
    const int i = s.gen - 1;
    for (int r = 0; r < n_; ++r) col[r] = m[r * n_ + i];
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        u64 delta = (sg[i * n_ + c] + p_ - (c == i ? 1 : 0)) % p_;
        if (delta) m[r * n_ + c] = (m[r * n_ + c] + mulmod(col[r], delta, p_)) % p_;
      }
  }
  return m;
}

std::string CoxeterImage::key(const Word& w) const {
  auto m = matrix(w);
  std::vector<long> ab(class_count_, 0);
  for (const auto& s : w.syllables()) ab[classes_[s.gen]] += s.exp;
  std::string out;
  out.reserve(m.size() * 4 + ab.size() * 8);
  for (u64 x : m) {
    auto v = static_cast<std::uint32_t>(x);
    out.append(reinterpret_cast<const char*>(&v), sizeof v);
  }
  out.append(reinterpret_cast<const char*>(ab.data()), ab.size() * sizeof(long));
  return out;
}

namespace {

u64 large_prime(u64 l) {
  u64 p = ((u64(1) << 30) / l) * l + 1;
  while (!is_prime(p)) p += l;
  return p;
}

}  // namespace

HeckeImage::HeckeImage(const GroupSpec& spec)
    : n_(spec.rank()), classes_(spec.abelian_classes()), class_count_(spec.abelian_class_count()) {
  u64 l = 2;
  for (auto [i, j] : spec.finite_pairs()) l = std::lcm(l, u64(2 * spec.label(i, j).value()));
  if (l > (u64(1) << 24)) throw Error(ErrorKind::argument, "labels too large for the hash image");
  const u64 p = p_ = large_prime(l);
  const u64 g = primitive_root(p);
  const u64 r = powmod(g, 7919, p);  // fixed generic parameter, q = r^2
  const u64 q = mulmod(r, r, p);
  const u64 qinv = powmod(q, p - 2, p);
  // T_s(e_s) = -e_s, T_s(e_t) = q e_t + r c_st e_s with c_st = zeta + zeta^-1
  // (zeta of order 2 m_st; c = 2 for infinite labels).
  // T_s^-1 = q^-1 T_s - (q - 1) q^-1 I.
  diag_.assign(n_, q);
  self_.assign(n_, p - 1);
  diag_inv_.assign(n_, mulmod(qinv, (q + p - (q - 1)) % p, p));  // q^-1 (q - (q-1)) = q^-1
  self_inv_.assign(n_, mulmod(qinv, (p - 1 + p - (q - 1) % p) % p, p));
  row_.assign(n_, std::vector<u64>(n_, 0));
  row_inv_.assign(n_, std::vector<u64>(n_, 0));
  for (Gen s = 1; s <= n_; ++s)
    for (Gen t = 1; t <= n_; ++t) {
      if (s == t) continue;
      Label lab = spec.label(s, t);
      u64 c = 2;
      if (lab.is_finite()) {
        u64 z = powmod(g, (p - 1) / (2 * lab.value()), p);
        c = (z + powmod(z, p - 2, p)) % p;
      }
      row_[s - 1][t - 1] = mulmod(r, c, p);
      row_inv_[s - 1][t - 1] = mulmod(qinv, row_[s - 1][t - 1], p);
    }
}

std::vector<u64> HeckeImage::matrix(const Word& w) const {
  std::vector<u64> m(static_cast<std::size_t>(n_) * n_, 0);
  for (int r = 0; r < n_; ++r) m[r * n_ + r] = 1;
  std::vector<u64> col(n_);
  for (const auto& sy : w.syllables()) {
    if (sy.gen < 1 || sy.gen > n_) throw Error(ErrorKind::argument, "generator out of range");
    const int s = sy.gen - 1;
    const bool inv = sy.exp < 0;
    const u64 d = inv ? diag_inv_[s] : diag_[s];
    const u64 self = inv ? self_inv_[s] : self_[s];
    const auto& row = inv ? row_inv_[s] : row_[s];
    for (int k = 0; k < std::abs(sy.exp); ++k) {
      // M <- M A, where A has entries A[c][c] = d (c != s), A[s][s] = self, A[s][c] = row[c]
      for (int r = 0; r < n_; ++r) col[r] = m[r * n_ + s];
      for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
          u64& x = m[r * n_ + c];
          x = c == s ? mulmod(x, self, p_) : (mulmod(x, d, p_) + mulmod(col[r], row[c], p_)) % p_;
        }
    }
  }
  return m;
}

std::string HeckeImage::key(const Word& w) const {
  auto m = matrix(w);
  std::vector<long> ab(class_count_, 0);
  for (const auto& s : w.syllables()) ab[classes_[s.gen]] += s.exp;
  std::string out;
  for (u64 x : m) {
    auto v = static_cast<std::uint32_t>(x);
    out.append(reinterpret_cast<const char*>(&v), sizeof v);
  }
  out.append(reinterpret_cast<const char*>(ab.data()), ab.size() * sizeof(long));
  return out;
}

std::vector<Word> pair_ball(const DihedralPair& pair, int radius) {
  if (radius < 0) throw Error(ErrorKind::argument, "radius must be nonnegative");
  const int letters[4] = {pair.i, -pair.i, pair.j, -pair.j};
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<Word> out{Word()};
  std::vector<GarsideState> states{GarsideState(pair.m)};
  seen.emplace(states[0].key(), 0);
  std::size_t lo = 0;
  for (int r = 0; r < radius; ++r) {
    std::size_t hi = out.size();
    for (std::size_t idx = lo; idx < hi; ++idx)
      for (int l : letters) {
        GarsideState st = states[idx];
        st.multiply(l == pair.i || l == -pair.i ? 0 : 1, l > 0 ? 1 : -1);
        if (seen.emplace(st.key(), out.size()).second) {
          out.push_back(out[idx] * Word::generator(std::abs(l), l > 0 ? 1 : -1));
          states.push_back(std::move(st));
        }
      }
    lo = hi;
  }
  return out;
}

IntersectionReport parabolic_intersection_check(const GroupSpec& spec, Gen i, Gen j, Gen s, Gen t,
                                                int radius) {
  require_scope(spec, false);
  IntersectionReport rep;
  rep.first = dihedral_pair(spec, i, j);
  rep.second = dihedral_pair(spec, s, t);
  rep.radius = radius;
  const auto& a = rep.first;
  const auto& b = rep.second;
  int shared = (a.contains(b.i) ? 1 : 0) + (a.contains(b.j) ? 1 : 0);
  if (shared == 2) throw Error(ErrorKind::argument, "the two pairs coincide");
  if (shared == 1) rep.shared = a.contains(b.i) ? b.i : b.j;

  auto left = pair_ball(a, radius);
  auto right = pair_ball(b, radius);
  rep.first_elements = left.size();
  rep.second_elements = right.size();
  HeckeImage img(spec);
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < right.size(); ++k) buckets[img.key(right[k])].push_back(k);

  for (const Word& x : left) {
    auto it = buckets.find(img.key(x));
    if (it == buckets.end()) continue;
    for (std::size_t k : it->second) {
      ++rep.candidate_pairs;
      if (!equal_in_G(x, right[k], spec)) continue;
      CommonElement c{x, right[k], false};
      if (rep.shared) {
        long e = 0;
        for (const auto& sy : x.syllables()) e += sy.exp;
        c.allowed = garside_nf(x, a) == garside_nf(Word::generator(*rep.shared, int(e)), a);
      } else {
        c.allowed = x.empty();
      }
      rep.ok = rep.ok && c.allowed;
      rep.common.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace artin
