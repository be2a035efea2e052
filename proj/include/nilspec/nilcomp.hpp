#pragma once

// Nilcompactification of Spec S inside an i-extension R.
//
//   ψ(I)  = {x ∈ R : xS ⊆ I}              ideal transfer S -> R
//   Q     = R / ψ(N(S))                    with projection θ
//   NC    = Spec Q                          the R-nilcompactification
//   λ(P)  = ψ(P) / ψ(N(S))                  Spec S -> NC
//
// plus the functorial action of extension morphisms (Q(h), NC(h)), the
// unitization's universal arrow u_R : U_m(S) -> R, and η(R) = image of NC(u_R).
//
// Construction functions throw InvariantFault when a property that must hold
// fails; the *_checks functions report each property as a named check.

#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilspec/construct.hpp"
#include "nilspec/hom.hpp"
#include "nilspec/hom_search.hpp"
#include "nilspec/ideal.hpp"
#include "nilspec/morphism.hpp"
#include "nilspec/report.hpp"
#include "nilspec/space.hpp"

namespace nilspec {

/// ψ(I) for an ideal I of the sub-ring; verified to be an ideal of R.
inline Ideal psi(const IExtension& ext, const Ideal& i) {
  const FiniteRng& r = *ext.amb();
  std::vector<bool> target(r.size(), false);
  for (Elem s : i.members()) target[ext.to_amb(s)] = true;
  std::vector<Elem> out;
  for (Elem x = 0; x < r.size(); ++x) {
    bool inside = true;
    for (Elem s : ext.embed()) {
      if (!target[r.mul(x, s)]) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(x);
  }
  Ideal result(ext.amb(), std::move(out));
  if (auto v = ideal_violation(r, result.mask())) {
    throw InvariantFault("psi(" + i.to_string() + ") in " + ext.label() + " is not an ideal: " + *v);
  }
  return result;
}

/// Image of a set of elements under a map, as a subset of the target.
inline Ideal image_of(const RngHom& h, const Ideal& i) {
  std::vector<Elem> out;
  out.reserve(i.size());
  for (Elem x : i.members()) out.push_back(h(x));
  return Ideal(h.target(), std::move(out));
}

inline Ideal preimage_of(const RngHom& h, const Ideal& i) {
  std::vector<Elem> out;
  for (Elem x = 0; x < h.source()->size(); ++x) {
    if (i.contains(h(x))) out.push_back(x);
  }
  return Ideal(h.source(), std::move(out));
}

/// Spec(h) : Spec(target) -> Spec(source), P ↦ h^{-1}(P). Points are matched
/// by member set, never by position.
inline SpaceMap spec_map(const RngHom& h, const SpecSpace& source_spec, const SpecSpace& target_spec) {
  SpaceMap f{target_spec.space, source_spec.space, std::vector<std::size_t>(target_spec.primes.size())};
  for (std::size_t p = 0; p < target_spec.primes.size(); ++p) {
    f.map[p] = source_spec.require_index(preimage_of(h, target_spec.primes[p]), "spec_map");
  }
  return f;
}

namespace detail {
inline std::string points_to_string(const SpecSpace& x, const PointSet& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i]) continue;
    out += (first ? "" : ",") + x.primes[i].to_string();
    first = false;
  }
  return out + "}";
}
}  // namespace detail

struct NilcompResult {
  IExtension ext;
  SpecSpace sub_spec;                    // Spec S
  SpecSpace amb_spec;                    // Spec R
  std::vector<Ideal> psi_of_primes;      // ψ(P) for P in Spec S, same order
  SpaceMap psi_map;                      // Spec S -> Spec R
  Ideal nil_sub;                         // N(S)
  Ideal psi_nil;                         // ψ(N(S))
  Quotient q;                            // Q = R/ψ(N(S)) and θ
  SpecSpace nc;                          // Spec Q
  SpaceMap lambda;                       // Spec S -> NC

  const RngHom& theta() const { return q.projection; }
};

/// Builds every piece of the nilcompactification without auditing the
/// topological and functorial properties; see nilcomp_checks().
inline NilcompResult assemble_nilcomp(const IExtension& ext) {
  SpecSpace sub_spec = spec_space(ext.sub());
  SpecSpace amb_spec = spec_space(ext.amb());
  std::vector<Ideal> images;
  SpaceMap psi_map{sub_spec.space, amb_spec.space, std::vector<std::size_t>(sub_spec.primes.size())};
  for (std::size_t p = 0; p < sub_spec.primes.size(); ++p) {
    images.push_back(psi(ext, sub_spec.primes[p]));
    psi_map.map[p] = amb_spec.require_index(images.back(), "psi of " + sub_spec.primes[p].to_string());
  }
  Ideal nil_sub = nilradical(ext.sub(), sub_spec.primes);
  Ideal psi_nil = psi(ext, nil_sub);
  Quotient q = quotient(ext.amb(), psi_nil);
  SpecSpace nc = spec_space(q.ring);
  SpaceMap lambda{sub_spec.space, nc.space, std::vector<std::size_t>(sub_spec.primes.size())};
  for (std::size_t p = 0; p < sub_spec.primes.size(); ++p) {
    lambda.map[p] = nc.require_index(image_of(q.projection, images[p]), "lambda of " + sub_spec.primes[p].to_string());
  }
  return {ext,          std::move(sub_spec), std::move(amb_spec), std::move(images), std::move(psi_map),
          std::move(nil_sub), std::move(psi_nil), std::move(q), std::move(nc), std::move(lambda)};
}

/// The four parts of the ψ lemma: (i) ψ(P) is a prime of R not containing S,
/// (ii) ψ is injective on primes, (iii) ψ(Q ∩ S) = Q for primes Q ⊉ S,
/// (iv) ψ(∩ Spec S) = ∩ ψ(P).
inline Report psi_lemma_checks(const NilcompResult& nc) {
  Report rep;
  const std::string& inst = nc.ext.label();
  const Ideal sub_image = nc.ext.image();
  rep.run("lemma1_i", inst, [&]() -> std::optional<std::string> {
    for (std::size_t p = 0; p < nc.sub_spec.primes.size(); ++p) {
      const Ideal& img = nc.psi_of_primes[p];
      if (!is_prime(img).prime) return "psi(" + nc.sub_spec.primes[p].to_string() + ") not prime";
      if (sub_image.subset_of(img)) return "psi(" + nc.sub_spec.primes[p].to_string() + ") contains S";
    }
    return std::nullopt;
  });
  rep.run("lemma1_ii", inst, [&]() -> std::optional<std::string> {
    for (std::size_t a = 0; a < nc.psi_of_primes.size(); ++a) {
      for (std::size_t b = a + 1; b < nc.psi_of_primes.size(); ++b) {
        if (nc.psi_of_primes[a] == nc.psi_of_primes[b]) {
          return nc.sub_spec.primes[a].to_string() + " and " + nc.sub_spec.primes[b].to_string() + " collide";
        }
      }
    }
    return std::nullopt;
  });
  rep.run("lemma1_iii", inst, [&]() -> std::optional<std::string> {
    for (const PrimeIdeal& q : nc.amb_spec.primes) {
      if (sub_image.subset_of(q)) continue;
      const Ideal trace = nc.ext.restrict(q);
      if (!is_prime(trace).prime) return "Q∩S not prime for Q=" + q.to_string();
      if (!(psi(nc.ext, trace) == q)) return "psi(Q∩S) != Q for Q=" + q.to_string();
    }
    return std::nullopt;
  });
  rep.run("lemma1_iv", inst, [&]() -> std::optional<std::string> {
    const Ideal lhs = psi(nc.ext, kernel(nc.ext.sub(), nc.sub_spec.primes));
    Ideal rhs = Ideal::whole(nc.ext.amb());
    for (const Ideal& img : nc.psi_of_primes) rhs = intersect(rhs, img);
    if (!(lhs == rhs)) return "psi(kernel)=" + lhs.to_string() + " but kernel of images=" + rhs.to_string();
    return std::nullopt;
  });
  return rep;
}

/// Set identities behind continuity/openness of ψ and openness of Spec_S R:
///   ψ^{-1}(D_R(r)) = ∪_{s∈S} D_S(rs)        for every r ∈ R
///   ψ(D_S(s)) = ψ(Spec S) ∩ D_R(s)            for every s ∈ S
///   Spec_S R = {Q : Q ⊉ S} = ∪_s D_R(s) = ψ(Spec S), open in Spec R
///   closure(Spec_S R) = V_R(ψ(N(S)))
inline Report spec_open_checks(const NilcompResult& nc) {
  Report rep;
  const std::string& inst = nc.ext.label();
  const FiniteRng& r = *nc.ext.amb();
  const std::size_t ks = nc.sub_spec.primes.size();
  const std::size_t kr = nc.amb_spec.primes.size();
  auto d_sub = [&](Elem s) {
    PointSet out(ks);
    for (std::size_t p = 0; p < ks; ++p) out[p] = !nc.sub_spec.primes[p].contains(s);
    return out;
  };
  auto d_amb = [&](Elem x) {
    PointSet out(kr);
    for (std::size_t q = 0; q < kr; ++q) out[q] = !nc.amb_spec.primes[q].contains(x);
    return out;
  };
  rep.run("psi_preimage_basic_open", inst, [&]() -> std::optional<std::string> {
    for (Elem x = 0; x < r.size(); ++x) {
      const PointSet lhs = nc.psi_map.preimage(d_amb(x));
      PointSet rhs(ks, false);
      for (Elem s = 0; s < nc.ext.sub()->size(); ++s) {
        const auto rs = nc.ext.to_sub(r.mul(x, nc.ext.to_amb(s)));
        if (!rs) return "r*s left S for r=" + r.name(x);
        const PointSet d = d_sub(*rs);
        for (std::size_t p = 0; p < ks; ++p) rhs[p] = rhs[p] || d[p];
      }
      if (lhs != rhs) return "r=" + r.name(x);
    }
    return std::nullopt;
  });
  const PointSet spec_s_r = nc.psi_map.full_image();
  rep.run("psi_image_basic_open", inst, [&]() -> std::optional<std::string> {
    for (Elem s = 0; s < nc.ext.sub()->size(); ++s) {
      const PointSet lhs = nc.psi_map.image(d_sub(s));
      PointSet rhs = d_amb(nc.ext.to_amb(s));
      for (std::size_t q = 0; q < kr; ++q) rhs[q] = rhs[q] && spec_s_r[q];
      if (lhs != rhs) return "s=" + nc.ext.sub()->name(s);
    }
    return std::nullopt;
  });
  rep.run("spec_s_union_basic_opens", inst, [&]() -> std::optional<std::string> {
    const Ideal sub_image = nc.ext.image();
    PointSet not_containing(kr), union_d(kr, false);
    for (std::size_t q = 0; q < kr; ++q) not_containing[q] = !sub_image.subset_of(nc.amb_spec.primes[q]);
    for (Elem s : nc.ext.embed()) {
      const PointSet d = d_amb(s);
      for (std::size_t q = 0; q < kr; ++q) union_d[q] = union_d[q] || d[q];
    }
    if (not_containing != union_d) return "{Q : Q ⊉ S} != union of D_R(s)";
    if (union_d != spec_s_r) return "union of D_R(s) != psi(Spec S)";
    return std::nullopt;
  });
  rep.run("spec_s_open", inst, [&]() -> std::optional<std::string> {
    if (!is_open(nc.amb_spec.space, spec_s_r)) return detail::points_to_string(nc.amb_spec, spec_s_r) + " not open";
    return std::nullopt;
  });
  rep.run("spec_s_closure", inst, [&]() -> std::optional<std::string> {
    const PointSet lhs = closure(nc.amb_spec.space, spec_s_r);
    const PointSet rhs = nc.amb_spec.as_points(vanishing(nc.amb_spec.primes, nc.psi_nil));
    if (lhs != rhs) {
      return "closure " + detail::points_to_string(nc.amb_spec, lhs) + " != V(psi(N(S))) " +
             detail::points_to_string(nc.amb_spec, rhs);
    }
    return std::nullopt;
  });
  return rep;
}

/// Invariants of the compactification itself.
inline Report nc_checks(const NilcompResult& nc) {
  Report rep;
  const std::string& inst = nc.ext.label();
  rep.run("nc_nilradical_routes", inst, [&]() -> std::optional<std::string> {
    for (const RngPtr& ring : {nc.ext.sub(), nc.ext.amb(), nc.q.ring}) {
      const SpecSpace& sp = ring == nc.ext.sub() ? nc.sub_spec : ring == nc.ext.amb() ? nc.amb_spec : nc.nc;
      auto routes = nilradical_routes(ring, sp.primes);
      if (!routes.agree()) {
        return ring->label() + ": nilpotents " + routes.nilpotents.to_string() + " vs kernel " +
               routes.prime_kernel.to_string();
      }
    }
    return std::nullopt;
  });
  rep.run("nc_lambda_formula", inst, [&]() -> std::optional<std::string> {
    for (std::size_t p = 0; p < nc.sub_spec.primes.size(); ++p) {
      if (!nc.psi_nil.subset_of(nc.psi_of_primes[p])) return "psi(N(S)) not inside psi(" + nc.sub_spec.primes[p].to_string() + ")";
      const Ideal back = preimage_of(nc.theta(), nc.nc.primes[nc.lambda(p)]);
      if (!(back == nc.psi_of_primes[p])) return "theta^-1(lambda(P)) != psi(P) at " + nc.sub_spec.primes[p].to_string();
    }
    return std::nullopt;
  });
  rep.run("nc_closure_homeomorphic", inst, [&]() -> std::optional<std::string> {
    // V_R(ψ(N(S))) -> Spec Q, P ↦ θ(P), must be an order isomorphism.
    const Spectrum v = vanishing(nc.amb_spec.primes, nc.psi_nil);
    const SpecSpace vs{nc.ext.amb(), v, spec_space_of(nc.ext.amb(), v).space};
    SpaceMap f{vs.space, nc.nc.space, std::vector<std::size_t>(v.size())};
    for (std::size_t p = 0; p < v.size(); ++p) f.map[p] = nc.nc.require_index(image_of(nc.theta(), v[p]), "V->Spec Q");
    if (!homeomorphic(f)) return "P -> P/psi(N(S)) is not a homeomorphism";
    return std::nullopt;
  });
  rep.run("nc_lambda_injective", inst, [&]() -> std::optional<std::string> {
    if (!nc.lambda.injective()) return "lambda identifies two primes";
    return std::nullopt;
  });
  rep.run("nc_lambda_continuous", inst, [&]() -> std::optional<std::string> {
    if (!strongly_continuous(nc.lambda)) return "preimage of an open is not open";
    return std::nullopt;
  });
  rep.run("nc_lambda_open", inst, [&]() -> std::optional<std::string> {
    if (!open_onto_image(nc.lambda)) return "image of an open is not open in the image";
    return std::nullopt;
  });
  rep.run("nc_lambda_dense", inst, [&]() -> std::optional<std::string> {
    const PointSet img = nc.lambda.full_image();
    if (!is_dense(nc.nc.space, img)) return "closure of image " + detail::points_to_string(nc.nc, img) + " is not NC";
    return std::nullopt;
  });
  rep.run("nc_spectral", inst, [&]() -> std::optional<std::string> {
    const SpectralReport s = is_spectral(nc.nc.space);
    if (!s.spectral) return s.describe();
    return std::nullopt;
  });
  rep.run("spec_discrete", inst, [&]() -> std::optional<std::string> {
    for (const SpecSpace* sp : {&nc.sub_spec, &nc.amb_spec, &nc.nc}) {
      if (!sp->space.is_discrete()) return "Spec " + sp->ring->label() + " has a non-trivial specialization";
    }
    return std::nullopt;
  });
  // Finite case: dense image in a discrete space is everything, equivalently
  // no prime of R contains both S and ψ(N(S)).
  rep.run("nc_lambda_surjective_finite", inst, [&]() -> std::optional<std::string> {
    if (!nc.lambda.surjective()) return "NC has points outside lambda(Spec S)";
    const Ideal both = ideal_sum(nc.ext.image(), nc.psi_nil);
    for (const PrimeIdeal& q : nc.amb_spec.primes) {
      if (both.subset_of(q)) return "prime " + q.to_string() + " contains S + psi(N(S))";
    }
    return std::nullopt;
  });
  return rep;
}

inline Report nilcomp_checks(const NilcompResult& nc) {
  Report rep = psi_lemma_checks(nc);
  rep.merge(spec_open_checks(nc));
  rep.merge(nc_checks(nc));
  return rep;
}

/// ψ : Spec S -> Spec R, with the ψ lemma verified (hard fault on failure).
inline SpaceMap psi_spec(const IExtension& ext) {
  NilcompResult nc = assemble_nilcomp(ext);
  psi_lemma_checks(nc).require_all();
  return nc.psi_map;
}

inline Report spec_open_checks(const IExtension& ext) { return spec_open_checks(assemble_nilcomp(ext)); }

/// The R-nilcompactification with every invariant asserted.
inline NilcompResult nilcompactification(const IExtension& ext) {
  if (!ext.e_object()) throw DomainError("nilcompactification: ambient ring " + ext.amb()->label() + " has no identity");
  NilcompResult nc = assemble_nilcomp(ext);
  nilcomp_checks(nc).require_all();
  return nc;
}

namespace detail {
inline std::size_t extension_fingerprint(const IExtension& ext) {
  std::size_t h = ext.sub()->size() * 1000003U + ext.amb()->size();
  auto mix = [&](Elem v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U); };
  for (Elem v : ext.embed()) mix(v);
  for (Elem v : ext.amb()->mul_table()) mix(v);
  for (Elem v : ext.sub()->mul_table()) mix(v);
  return h;
}

inline bool same_extension(const IExtension& a, const IExtension& b) {
  return a.sub()->same_tables(*b.sub()) && a.amb()->same_tables(*b.amb()) && a.embed() == b.embed();
}

/// Memo table keyed by exact (S, R, embedding) data. References stay valid
/// for the lifetime of the table.
template <class T>
class ExtensionMemo {
 public:
  template <class Make>
  const T& get(const IExtension& ext, Make&& make) {
    auto& bucket = entries_[extension_fingerprint(ext)];
    for (const auto& e : bucket) {
      if (same_extension(e.first, ext)) return *e.second;
    }
    bucket.emplace_back(ext, std::make_unique<T>(make()));
    return *bucket.back().second;
  }

 private:
  std::map<std::size_t, std::vector<std::pair<IExtension, std::unique_ptr<T>>>> entries_;
};
}  // namespace detail

/// Memoizes assembled nilcompactifications.
class NilcompCache {
 public:
  const NilcompResult& get(const IExtension& ext) {
    return memo_.get(ext, [&] { return assemble_nilcomp(ext); });
  }

 private:
  detail::ExtensionMemo<NilcompResult> memo_;
};

// --- functor action of extension morphisms -----------------------------------

/// Q(h) : R1/ψ(N(S1)) -> R2/ψ(N(S2)), r + ψ ↦ h(r) + ψ. Checks that h maps
/// ψ(N(S1)) into ψ(N(S2)) and that the coset map is well defined and unital.
inline RngHom q_of_hom(const EMorphism& m, const NilcompResult& src, const NilcompResult& dst) {
  const RngHom& h = m.hom();
  for (Elem x : src.psi_nil.members()) {
    if (!dst.psi_nil.contains(h(x))) {
      throw InvariantFault("h does not restrict to psi(N(S)): " + src.ext.amb()->name(x) + " escapes");
    }
  }
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> map(src.q.ring->size(), kUnset);
  for (Elem r = 0; r < src.ext.amb()->size(); ++r) {
    const Elem c = src.theta()(r);
    const Elem v = dst.theta()(h(r));
    if (map[c] == kUnset) {
      map[c] = v;
    } else if (map[c] != v) {
      throw InvariantFault("Q(h) not well defined at coset " + src.q.ring->name(c));
    }
  }
  RngHom qh = RngHom::make(src.q.ring, dst.q.ring, std::move(map));
  if (!qh.unital()) throw InvariantFault("Q(h) is not unital");
  return qh;
}

/// NC(h) : NC(dst) -> NC(src), the spectral map of Q(h).
inline SpaceMap nc_of_hom(const RngHom& qh, const NilcompResult& src, const NilcompResult& dst) {
  return spec_map(qh, src.nc, dst.nc);
}

/// W(h) = h|S : S1 -> S2 as a ring map.
inline RngHom restriction_hom(const EMorphism& m) {
  return RngHom::make(m.src().sub(), m.dst().sub(), m.restriction());
}

/// The four naturality squares for one morphism h : (S1,R1) -> (S2,R2):
///   θ: Q(h)∘θ1 = θ2∘h
///   ψ: h^{-1}(ψ2(P)) = ψ1(W(h)^{-1}(P))            for P ∈ Spec S2
///   λ: NC(h)∘λ2 = λ1∘Spec(W(h))
///   j: h(ψ1(N(S1))) ⊆ ψ2(N(S2)), so V(h)∘j1 = j2∘χ(h)
inline Report naturality_checks(const EMorphism& m, const NilcompResult& src, const NilcompResult& dst,
                                const std::string& inst) {
  Report rep;
  std::optional<RngHom> qh;
  rep.run("q_well_defined", inst, [&]() -> std::optional<std::string> {
    qh = q_of_hom(m, src, dst);
    return std::nullopt;
  });
  if (!qh) return rep;
  const RngHom& h = m.hom();
  rep.run("nat_theta", inst, [&]() -> std::optional<std::string> {
    for (Elem r = 0; r < h.source()->size(); ++r) {
      if ((*qh)(src.theta()(r)) != dst.theta()(h(r))) return "r=" + h.source()->name(r);
    }
    return std::nullopt;
  });
  const RngHom w = restriction_hom(m);
  rep.run("nat_psi", inst, [&]() -> std::optional<std::string> {
    for (std::size_t p = 0; p < dst.sub_spec.primes.size(); ++p) {
      const Ideal lhs = preimage_of(h, dst.psi_of_primes[p]);
      const Ideal rhs = psi(src.ext, preimage_of(w, dst.sub_spec.primes[p]));
      if (!(lhs == rhs)) return "P=" + dst.sub_spec.primes[p].to_string();
    }
    return std::nullopt;
  });
  rep.run("nat_lambda", inst, [&]() -> std::optional<std::string> {
    const SpaceMap nch = nc_of_hom(*qh, src, dst);
    const SpaceMap spec_w = spec_map(w, src.sub_spec, dst.sub_spec);
    for (std::size_t p = 0; p < dst.sub_spec.primes.size(); ++p) {
      if (nch(dst.lambda(p)) != src.lambda(spec_w(p))) return "P=" + dst.sub_spec.primes[p].to_string();
    }
    return std::nullopt;
  });
  rep.run("nat_j", inst, [&]() -> std::optional<std::string> {
    for (Elem x : src.psi_nil.members()) {
      if (!dst.psi_nil.contains(h(x))) return "x=" + h.source()->name(x);
    }
    return std::nullopt;
  });
  return rep;
}

/// Properties of a morphism R -> T fixing S: Q_S(h) injective, surjective h
/// gives an isomorphism and an NC homeomorphism, NC_S(h) has dense image, and
/// NC_S(h)∘λ_T = λ_R.
inline Report fixed_sub_checks(const EMorphism& m, const NilcompResult& src, const NilcompResult& dst,
                               const std::string& inst) {
  Report rep;
  if (!m.fixes_sub()) {
    rep.add("es_fixes_sub", inst, false, "morphism does not restrict to the identity of S");
    return rep;
  }
  std::optional<RngHom> qh;
  std::optional<SpaceMap> nch;
  rep.run("es_q_injective", inst, [&]() -> std::optional<std::string> {
    qh = q_of_hom(m, src, dst);
    nch = nc_of_hom(*qh, src, dst);
    if (!qh->injective()) return "Q_S(h) has a non-trivial kernel";
    return std::nullopt;
  });
  if (!qh) return rep;
  if (m.hom().surjective()) {
    rep.run("es_surjective_iso", inst, [&]() -> std::optional<std::string> {
      if (!qh->injective() || !qh->surjective()) return "Q_S(h) is not bijective";
      if (!homeomorphic(*nch)) return "NC_S(h) is not a homeomorphism";
      return std::nullopt;
    });
  }
  rep.run("es_nc_dense", inst, [&]() -> std::optional<std::string> {
    if (!is_dense(src.nc.space, nch->full_image())) return "image of NC_S(h) not dense";
    return std::nullopt;
  });
  rep.run("es_lambda_triangle", inst, [&]() -> std::optional<std::string> {
    for (std::size_t p = 0; p < src.sub_spec.primes.size(); ++p) {
      if ((*nch)(dst.lambda(p)) != src.lambda(p)) return "P=" + src.sub_spec.primes[p].to_string();
    }
    return std::nullopt;
  });
  return rep;
}

// --- unitization --------------------------------------------------------------

/// (x, a) ↦ (x, a mod m_small) from U_{m_big}(S) to U_{m_small}(S).
inline EMorphism unitization_reduction(const IExtension& big, const IExtension& small) {
  const std::size_t ns = big.sub()->size();
  const std::size_t m_small = small.amb()->size() / ns;
  std::vector<Elem> map(big.amb()->size());
  for (Elem u = 0; u < map.size(); ++u) map[u] = static_cast<Elem>(((u / ns) % m_small) * ns + u % ns);
  return make_e_morphism(RngHom::make(big.amb(), small.amb(), std::move(map)), big, small);
}

struct UniversalArrow {
  IExtension unitization;  // (S, U_m(S))
  EMorphism arrow;         // u_R : U_m(S) -> R, fixing S
  std::size_t modulus;
};

/// u_R(s, a) = s + a·1_R from U_m(S), m = lcm(exponent of S, additive order
/// of 1_R). Uniqueness is checked by searching all unital homs that fix S.
inline UniversalArrow universal_arrow(const IExtension& ext) {
  const RngPtr& r = ext.amb();
  if (!r->identity()) throw DomainError("universal_arrow: " + r->label() + " has no identity");
  const Elem one = *r->identity();
  const std::size_t m = std::lcm(additive_exponent(*ext.sub()), r->additive_order(one));
  IExtension u = unitization(ext.sub(), m);
  const std::size_t ns = ext.sub()->size();
  std::vector<Elem> map(u.amb()->size());
  for (Elem v = 0; v < map.size(); ++v) map[v] = r->add(ext.to_amb(v % ns), r->scale(v / ns, one));
  RngHom h = RngHom::make(u.amb(), r, std::move(map));
  EMorphism arrow = make_e_morphism(h, u, ext);
  if (!arrow.fixes_sub()) throw InvariantFault("u_R does not fix S in " + ext.label());
  HomSearchOptions opts;
  for (Elem s = 0; s < ns; ++s) opts.fixed.emplace_back(s, ext.to_amb(s));
  const std::vector<RngHom> all = enumerate_homs(u.amb(), r, true, opts);
  if (all.size() != 1 || !(all.front() == h)) {
    throw InvariantFault("universal arrow into " + ext.label() + ": " + std::to_string(all.size()) +
                         " unital homs fix S (expected exactly u_R)");
  }
  return {std::move(u), std::move(arrow), m};
}

/// NC via U_{m2}(S) against NC via U_{m1}(S) for m1 | m2: the reduction is
/// surjective and fixes S, so Q of it must be an isomorphism and NC of it a
/// homeomorphism.
inline Report modulus_independence_checks(const RngPtr& s, std::size_t m1, std::size_t m2, NilcompCache& cache) {
  Report rep;
  const std::string inst = s->label() + ":U" + std::to_string(m1) + "~U" + std::to_string(m2);
  rep.run("modulus_independence", inst, [&]() -> std::optional<std::string> {
    if (m2 % m1 != 0) throw DomainError("modulus_independence: m1 must divide m2");
    const IExtension small = unitization(s, m1);
    const IExtension big = unitization(s, m2);
    const EMorphism red = unitization_reduction(big, small);
    const NilcompResult& nb = cache.get(big);
    const NilcompResult& ns = cache.get(small);
    const RngHom qh = q_of_hom(red, nb, ns);
    if (!qh.injective() || !qh.surjective()) return "Q(reduction) is not an isomorphism";
    if (!homeomorphic(nc_of_hom(qh, nb, ns))) return "NC(reduction) is not a homeomorphism";
    return std::nullopt;
  });
  return rep;
}

inline bool modulus_independence(const RngPtr& s, std::size_t m1, std::size_t m2) {
  NilcompCache cache;
  return modulus_independence_checks(s, m1, m2, cache).all_pass();
}

/// NC₀(S) against NC₀(S/N(S)) through the lift of S -> S/N(S) to the
/// canonical unitizations, (x, a) ↦ (π(x), a mod m').
inline Report reduce_mod_nil_checks(const RngPtr& s, NilcompCache& cache) {
  Report rep;
  const std::string inst = s->label();
  rep.run("reduce_mod_nil", inst, [&]() -> std::optional<std::string> {
    const Quotient red = quotient(s, nilradical(s));
    const IExtension u = canonical_extension(s);
    const IExtension ur = canonical_extension(red.ring);
    const std::size_t ns = s->size();
    const std::size_t nr = red.ring->size();
    const std::size_t m_r = ur.amb()->size() / nr;
    std::vector<Elem> map(u.amb()->size());
    for (Elem v = 0; v < map.size(); ++v) {
      map[v] = static_cast<Elem>(((v / ns) % m_r) * nr + red.projection(static_cast<Elem>(v % ns)));
    }
    const EMorphism lift = make_e_morphism(RngHom::make(u.amb(), ur.amb(), std::move(map)), u, ur);
    const NilcompResult& n0 = cache.get(u);
    const NilcompResult& n0r = cache.get(ur);
    const RngHom qh = q_of_hom(lift, n0, n0r);
    if (!qh.injective() || !qh.surjective()) return "Q(lift) is not an isomorphism";
    if (!homeomorphic(nc_of_hom(qh, n0, n0r))) return "NC0(S/N(S)) -> NC0(S) is not a homeomorphism";
    return std::nullopt;
  });
  return rep;
}

// --- η ------------------------------------------------------------------------

struct EtaResult {
  IExtension base_ext;    // (S, U_exp(S)), whose NC is NC₀(S)
  IExtension other_ext;   // (S, R)
  UniversalArrow u;
  PointSet eta_points;    // subset of NC₀(S)
  PointSet spec_points;   // λ₀(Spec S)
  FiniteSpace nc0;
  Report report;
};

/// η(R) = image of NC_S(u_R) : NC_S(R) -> NC₀(S). When u_R starts at U_m(S)
/// with m larger than the exponent, NC(S, U_m(S)) is identified with NC₀(S)
/// through the reduction U_m(S) -> U_exp(S).
inline EtaResult eta(const IExtension& ext, NilcompCache& cache) {
  const std::string inst = ext.label();
  UniversalArrow ua = universal_arrow(ext);
  const IExtension base = canonical_extension(ext.sub());
  const NilcompResult& n0 = cache.get(base);
  const NilcompResult& nm = cache.get(ua.unitization);
  const NilcompResult& nr = cache.get(ext);
  const RngHom qu = q_of_hom(ua.arrow, nm, nr);
  const SpaceMap ncu = nc_of_hom(qu, nm, nr);  // NC_S(R) -> NC(S, U_m)
  const EMorphism red = unitization_reduction(ua.unitization, base);
  const SpaceMap transport = inverse(nc_of_hom(q_of_hom(red, nm, n0), nm, n0));  // NC(S,U_m) -> NC₀
  const SpaceMap to_nc0 = compose(transport, ncu);

  EtaResult out{base, ext, std::move(ua), to_nc0.full_image(), n0.lambda.full_image(), n0.nc.space, {}};
  Report& rep = out.report;
  rep.run("eta_continuous", inst, [&]() -> std::optional<std::string> {
    if (!strongly_continuous(ncu)) return "NC_S(u_R) is not strongly continuous";
    return std::nullopt;
  });
  rep.run("eta_contains_spec", inst, [&]() -> std::optional<std::string> {
    for (std::size_t p = 0; p < out.spec_points.size(); ++p) {
      if (out.spec_points[p] && !out.eta_points[p]) return "lambda0 point " + n0.nc.space.label(p) + " missing";
    }
    return std::nullopt;
  });
  rep.run("eta_dense", inst, [&]() -> std::optional<std::string> {
    if (!is_dense(n0.nc.space, out.eta_points)) return "eta(R) not dense in NC0(S)";
    return std::nullopt;
  });
  // Finite T0 subspace, hence spectral; reported per instance only.
  rep.run("eta_spectral_finite", inst, [&]() -> std::optional<std::string> {
    std::vector<std::size_t> idx;
    for (std::size_t p = 0; p < out.eta_points.size(); ++p) {
      if (out.eta_points[p]) idx.push_back(p);
    }
    std::vector<std::string> labels;
    std::vector<bool> leq(idx.size() * idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      labels.push_back(n0.nc.space.label(idx[a]));
      for (std::size_t b = 0; b < idx.size(); ++b) leq[a * idx.size() + b] = n0.nc.space.leq(idx[a], idx[b]);
    }
    const SpectralReport s = is_spectral(FiniteSpace(std::move(labels), std::move(leq)));
    if (!s.spectral) return s.describe();
    return std::nullopt;
  });
  return out;
}

inline EtaResult eta(const IExtension& ext) {
  NilcompCache cache;
  return eta(ext, cache);
}

/// For h : R -> T fixing S: η(T) ⊆ η(R), NC_S(h)∘λ_T = λ_R with dense
/// image, and NC_S(h) a homeomorphism when h is onto. er and et are η of the
/// source and target extensions.
inline Report compare_compactifications(const EMorphism& m, const EtaResult& er, const EtaResult& et,
                                        NilcompCache& cache) {
  const std::string inst = m.src().label() + "->" + m.dst().amb()->label();
  Report rep;
  rep.run("eta_inclusion", inst, [&]() -> std::optional<std::string> {
    if (er.eta_points.size() != et.eta_points.size()) return "eta results live in different NC0 spaces";
    for (std::size_t p = 0; p < et.eta_points.size(); ++p) {
      if (et.eta_points[p] && !er.eta_points[p]) return "point " + er.nc0.label(p) + " in eta(T) but not eta(R)";
    }
    return std::nullopt;
  });
  rep.merge(fixed_sub_checks(m, cache.get(m.src()), cache.get(m.dst()), inst));
  return rep;
}

inline Report compare_compactifications(const EMorphism& m, NilcompCache& cache) {
  const std::string inst = m.src().label() + "->" + m.dst().amb()->label();
  try {
    const EtaResult er = eta(m.src(), cache);
    const EtaResult et = eta(m.dst(), cache);
    return compare_compactifications(m, er, et, cache);
  } catch (const Error& e) {
    Report rep;
    rep.add("eta_inclusion", inst, false, e.what());
    return rep;
  }
}

inline Report compare_compactifications(const EMorphism& m) {
  NilcompCache cache;
  return compare_compactifications(m, cache);
}

}  // namespace nilspec
