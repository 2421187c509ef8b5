#pragma once

#include "qri/catalog.hpp"
#include "qri/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace qri {

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct certificate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The generic symmetric matrix M(x) = sum x_k M_k of a quadric basis.
/// Entry (i,j) is a linear form in the coefficient variables x_0..x_t.
class Pencil {
 public:
  GeneratorSet basis;
  std::vector<SymMatrix> mats;
  std::vector<std::string> xnames;

  std::size_t count() const { return mats.size(); }           // t + 1
  std::size_t matrix_size() const { return basis.vars.size(); }
  const Field& field() const { return basis.field; }

  /// Entry (i,j) of the symbolic matrix, as a polynomial in x.
  MultiPoly entry(std::size_t i, std::size_t j) const;
  SymMatrix evaluate(std::span<const FieldElement> x) const;
  /// FNV-1a hash of the provenance and the canonical generator strings;
  /// certificates carry it so they bind to one generator order.
  std::string generator_order_hash() const;
};

Pencil assemble_pencil(const GeneratorSet& g, bool allow_reduce = false);

/// Lower-bound witness: det of the (rows x cols) submatrix of M(x) equals
/// scalar * lambda^exponent for the nonzero linear form lambda.
struct Certificate {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  LinForm lambda;
  unsigned exponent = 0;
  FieldElement scalar;
  std::string generator_order_hash;
};

/// Recomputes the submatrix determinant symbolically and checks the claimed
/// identity; returns the certified lower bound (the submatrix size). Throws
/// certificate_error on any mismatch.
unsigned verify_certificate(const Pencil& p, const Certificate& cert);

/// Builds a certificate from a submatrix choice by extracting the power-of-
/// linear-form structure of its determinant; nullopt when det is not of the
/// required shape.
std::optional<Certificate> make_certificate(const Pencil& p, std::vector<std::size_t> rows,
                                            std::vector<std::size_t> cols);

enum class SearchStatus { found, exhausted, budget_exhausted };
struct CertificateSearch {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<Certificate> certificate;
  std::size_t examined = 0;
};
/// Enumerates s x s submatrices in lexicographic order (principal ones, or
/// all row/column pairs) and returns the first pure-power determinant.
CertificateSearch search_certificate(const Pencil& p, unsigned s, bool principal_only,
                                     std::size_t budget);

/// True iff every witness member lies in span(basis), has rank <= k, and the
/// witness spans the whole space. Certifies rank index <= k over the
/// pencil's field.
bool certify_upper(const Pencil& p, const std::vector<QuadForm>& witness, unsigned k);

/// Exhaustive rank filtration sample over GF(q): projective representatives
/// x (first nonzero coordinate 1) with rank M(x) <= k.
struct PhiSample {
  std::int64_t q = 0;
  unsigned k = 0;
  std::size_t enumerated = 0;
  std::size_t count = 0;  // qualifying points
  bool points_stored = true;
  std::vector<std::vector<std::int64_t>> points;
  std::vector<std::vector<std::int64_t>> span_rows;  // reduced echelon basis of the span
  std::size_t span_dim = 0;
};

PhiSample phi_enumerate(const Pencil& p, unsigned k, std::int64_t q, std::size_t budget,
                        bool store_points = true);

/// Least s with Phi_s spanning the whole coefficient space: the rank index
/// over GF(q).
unsigned bruteforce_rank_index(const Pencil& p, std::int64_t q, std::size_t budget);

/// Lifts a spanning subset of sample points to symmetric integer
/// representatives and re-verifies rank bound and spanning over Q. Absence
/// is a value: the lift may raise ranks.
std::optional<GeneratorSet> lift_witness(const PhiSample& sample, const Pencil& rational_pencil,
                                         unsigned k);

/// Basis of the linear forms in x vanishing on every sample point.
std::vector<LinForm> linear_forms_on_phi(const PhiSample& sample, std::size_t dim);

// ---- orchestration ----

struct RunConfig {
  std::vector<std::int64_t> primes{5, 7};
  std::size_t budget = 100000000;
  std::uint64_t seed = 12345;
};

enum class Strategy { automatic, bruteforce, certificates };

struct Evidence {
  std::string kind;
  std::string detail;
  std::string field;
  unsigned bound = 0;
};

struct RankIndexResult {
  std::string spec;
  unsigned lower = 3;  // every irreducible nondegenerate variety here
  std::optional<unsigned> upper;
  std::optional<unsigned> value;
  std::vector<Evidence> lower_evidence;
  std::vector<Evidence> upper_evidence;
  std::map<std::int64_t, unsigned> gf_exact;
  std::optional<Certificate> certificate;
  std::string notes;
  double ms = 0;
};

RankIndexResult rank_index(const std::string& spec, Strategy strategy, const RunConfig& cfg);

/// Paper-replay certificate for families that print one; verified before
/// being returned.
std::optional<Certificate> known_certificate(const VarietySpec& vs, const Pencil& p);

struct UpperWitness {
  GeneratorSet witness;
  unsigned k = 0;
  std::string kind;
};
/// Family-specific rank-bounded spanning witness over Q, when one is known.
std::optional<UpperWitness> known_upper_witness(const VarietySpec& vs, const GeneratorSet& g);

// ---- hyperplane-section inequality harness ----

struct SectionTrial {
  std::string hyperplane;
  std::string pivot;
  std::size_t section_dim = 0;
  unsigned section_value = 0;
  bool inequality_ok = false;
};

struct SectionReport {
  std::string spec;
  std::int64_t q = 0;
  unsigned base_value = 0;
  std::uint64_t seed = 0;
  std::vector<SectionTrial> trials;
  bool all_ok = false;
};

SectionReport section_inequality_check(const std::string& spec, unsigned trials, std::int64_t q,
                                       const RunConfig& cfg);

/// Rank index over GF(q) of a seeded random hyperplane section; retries a
/// few hyperplanes until the restricted span reaches the expected dimension.
std::optional<unsigned> random_section_rank_index(const GeneratorSet& g, std::int64_t q,
                                                  std::uint64_t seed, std::size_t budget,
                                                  std::size_t expected_dim);

}  // namespace qri
