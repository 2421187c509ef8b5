#pragma once

#include "qri/quadform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qri {

struct Provenance {
  std::string kind;
  std::string detail;
  bool acm = true;  // arithmetically Cohen-Macaulay, per the construction
  std::string str() const { return detail.empty() ? kind : kind + "(" + detail + ")"; }
};

/// Monomial parametrization: coordinate z_i maps to the monomial images[i]
/// in the parameter variables.
struct MonomialMap {
  std::vector<std::string> param_vars;
  std::vector<Monomial> images;
  std::vector<std::string> coord_names;
  /// Parameter-variable blocks that must have matching degree across images
  /// (one block for a plain Veronese, one per factor for scrolls and Segre).
  std::vector<std::vector<std::size_t>> degree_blocks;

  std::size_t coords() const { return images.size(); }
  MultiPoly image_poly(const Field& f, std::size_t i) const;
  void validate() const;  // distinct images, uniform block degrees
  std::string str() const;
};

/// Ordered quadric generating set for one variety presentation.
struct GeneratorSet {
  Field field = Field::rationals();
  std::vector<std::string> vars;
  std::vector<QuadForm> gens;
  Provenance provenance;
  bool independent = false;
  std::optional<MonomialMap> param;  // monomial parametrization, when one exists
  /// General polynomial parametrization (images in param_vars), when the
  /// monomial structure is unavailable.
  std::optional<std::vector<std::string>> poly_param_vars;
  std::optional<std::vector<MultiPoly>> poly_param;

  std::size_t ambient() const { return vars.size() - 1; }
  std::size_t size() const { return gens.size(); }
  Matrix flatten() const;
  GeneratorSet to_field(const Field& f) const;
  bool check_independent() const;
  /// True when every generator vanishes identically under the attached
  /// parametrization; true when none is attached.
  bool vanishes_on_param() const;
};

/// Keeps the first generator of each new direction; the result spans the
/// same space and is linearly independent.
std::vector<QuadForm> greedy_basis(const std::vector<QuadForm>& gens);

// ---- constructions ----

/// All degree-d monomials in x_0..x_n, lexicographic (x_0 dominant).
MonomialMap veronese_map(unsigned n, unsigned d);

/// Drops one image monomial: inner projection from that coordinate point.
MonomialMap param_drop(const MonomialMap& map, std::size_t index);

/// Basis of the quadrics vanishing on a monomial parametrization, computed
/// as the nullspace of z_i z_j -> m_i * m_j.
GeneratorSet kernel_quadrics(const MonomialMap& map, Field f = Field::rationals());

/// Same nullspace computation for arbitrary polynomial images.
GeneratorSet kernel_quadrics_images(Field f, std::vector<std::string> coord_names,
                                    std::vector<std::string> param_vars,
                                    std::vector<MultiPoly> images, Provenance prov);

/// 2-minors of the concatenated 2-row catalecticant matrix, listed within
/// blocks first and then across block pairs.
GeneratorSet scroll_generators(const std::vector<unsigned>& degrees);

/// Independent 2-minors of the generic hypermatrix, checked against the
/// kernel oracle of the Segre monomial map.
GeneratorSet segre_generators(const std::vector<unsigned>& dims);

/// Three-term relations p_ij p_kl - p_ik p_jl + p_jk p_il, one per
/// quadruple i<j<k<l.
GeneratorSet plucker_generators(unsigned n);

/// The six degree >= 3 del Pezzo surface presentations S_0..S_5.
GeneratorSet delpezzo_surface(unsigned t);

enum class NonNormalKind { S1, S2, T };
GeneratorSet nonnormal_delpezzo(NonNormalKind kind, unsigned e);

/// Smooth linear sections X_5, X_4, X_3 of the Plucker quadrics of lines in
/// P^4, via the coordinate substitutions defining the section hyperplanes.
GeneratorSet grassmann_section(unsigned k);

/// Inner projection of the d-uple embedding of P^n; drop defaults to the
/// last image monomial. The (3,2) instance carries its printed generators.
GeneratorSet veronese_projection(unsigned n, unsigned d,
                                 std::optional<std::size_t> drop = std::nullopt);

/// Substitutes the hyperplane ell = 0 (solved for the pivot variable) into
/// every generator, removes the pivot coordinate and reduces to a basis.
GeneratorSet restrict_hyperplane(const GeneratorSet& g, const LinForm& ell, std::size_t pivot);
/// Substituted generators before basis reduction, zeros removed. Each member
/// has rank at most the rank of the generator it came from.
std::vector<QuadForm> restrict_generators_raw(const GeneratorSet& g, const LinForm& ell,
                                              std::size_t pivot);

// ---- variety spec grammar ----

struct VarietySpec {
  enum class Family { scroll, veronese, segre, plucker, delpezzo, nonnormal, grassec, veroproj };
  Family family{};
  std::vector<unsigned> nums;  // degrees / dims / (n[,d]) per family
  NonNormalKind nn_kind{};
  unsigned nn_e = 0;

  static VarietySpec parse(const std::string& text);
  std::string str() const;
};

GeneratorSet build_variety(const VarietySpec& spec);
GeneratorSet parse_variety(const std::string& text);

}  // namespace qri
