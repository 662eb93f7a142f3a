#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fuhp/characters.hpp"
#include "fuhp/field.hpp"
#include "fuhp/uhp_graph.hpp"

namespace fuhp {

struct SphericalRow {
  std::vector<double> values;  // indexed like SphericalTable::radii
  int multiplicity = 0;
  double adjacency_eigenvalue = 0.0;
  double laplace_eigenvalue = 0.0;
};

/**
 * The zonal spherical functions of H_q as radius-indexed rows.
 *
 * Radii are ordered 0, 4*delta, then the regular radii ascending; rows are
 * ordered by Laplacian eigenvalue.
 */
struct SphericalTable {
  std::int64_t q = 0;
  Residue delta = 0;
  Residue r_s = 0;
  std::vector<Residue> radii;
  std::vector<std::size_t> orbit_sizes;
  std::vector<SphericalRow> rows;
  /// Distinct eigenvalues of the generating adjacency alone. Can be smaller
  /// than rows.size() when two spherical functions agree at r_s.
  std::size_t distinct_adjacency_eigenvalues = 0;

  std::size_t radius_position(Residue r) const;
  double value(std::size_t row, Residue r) const { return rows[row].values[radius_position(r)]; }
  std::size_t orbit_size(Residue r) const { return orbit_sizes[radius_position(r)]; }
  std::size_t vertex_count() const { return static_cast<std::size_t>(q * (q - 1)); }
};

/**
 * Spectral oracle for the spherical functions.
 *
 * Eigenspaces of the adjacency matrix are split further by the remaining
 * orbit operators A_r (they all commute), giving the common eigenspaces of the
 * Hecke algebra. For each eigenspace with projector P, omega = P e0 / (P e0)(base)
 * where e0 is the indicator of sqrt(delta); the multiplicity is dim P.
 */
SphericalTable radial_eigenbasis(const UhpGraph& g);

/// Principal-series closed form: 1 at r = 0, beta(-1) at r = 4*delta, and
/// (1/(q+1)) sum_{z in S_r} beta(y_z) otherwise.
Complex principal_spherical(const FieldCtx& ctx, MultChar chi, Residue r);

/// Which coordinate the cuspidal closed form is evaluated in.
enum class CuspidalCoordinate {
  /// rho = r / (r - 4 delta) = N((z - sqrt d)/(z + sqrt d)); rho = 1 is not an orbit.
  Disk,
  /// rho = r, the pseudo-distance radius itself.
  Literal,
};

/// Value taken at the orbit of -sqrt(delta).
enum class CuspidalInfinity { MinusNu, MinusNu0Nu };

struct CuspidalReading {
  CuspidalCoordinate coordinate = CuspidalCoordinate::Disk;
  CuspidalInfinity infinity = CuspidalInfinity::MinusNu;

  friend bool operator==(const CuspidalReading&, const CuspidalReading&) = default;
};

std::string to_string(CuspidalReading reading);

/// r / (r - 4 delta). Throws DomainError at r = 4 delta (the point at infinity).
Residue disk_parameter(const FieldCtx& ctx, Residue r);

/// (1/(q+1)) sum_{u in U} eps(Tr(u - (1+rho)/(1-rho))) nu0(u) nu(u), with the
/// value 1 at rho = 0. Throws SingularRadius at rho = 1, InvalidCharacter if
/// nu == nu^{-1} on U.
Complex cuspidal_closed_form(const FieldCtx& ctx, NonDecompChar chi, Residue rho);

/// Cuspidal spherical function at pseudo-distance radius r under the given
/// reading. With the literal coordinate r = 1 throws SingularRadius.
Complex cuspidal_spherical(const FieldCtx& ctx, NonDecompChar chi, Residue r,
                           CuspidalReading reading = {});

/// (q+1)(1 - omega_i(r_s)).
double laplace_eigenvalue(const SphericalTable& table, std::size_t row, Residue r_s);

enum class SeriesFamily { Principal, Cuspidal };

struct CharacterMatch {
  SeriesFamily family = SeriesFamily::Principal;
  std::int64_t index = 0;  // beta_j index mod q-1, or nu_j index mod q+1
  std::size_t row = 0;
  double max_deviation = 0.0;
  std::vector<Residue> excluded_radii;
};

struct ReadingScore {
  CuspidalReading reading;
  double max_deviation = 0.0;
  std::vector<Residue> excluded_radii;
};

struct MatchReport {
  std::vector<CharacterMatch> matches;
  std::vector<ReadingScore> cuspidal_readings;
  CuspidalReading chosen_reading;
  double principal_max_deviation = 0.0;
  double principal_max_imag = 0.0;
  double cuspidal_max_deviation = 0.0;
  bool rows_unique = false;
  bool passed = false;
  std::vector<std::string> failures;

  /// The match for a character class, or nullptr.
  const CharacterMatch* find(SeriesFamily family, std::int64_t index) const;
};

/// Principal indices j = 0..(q-1)/2 and cuspidal indices j = 1..(q-1)/2: one
/// representative per {chi, chi^{-1}} class.
std::vector<std::int64_t> principal_class_indices(const FieldCtx& ctx);
std::vector<std::int64_t> cuspidal_class_indices(const FieldCtx& ctx);

inline constexpr double kMatchTolerance = 1e-9;

/**
 * Assigns every principal and cuspidal character class to the oracle row it
 * is closest to (max deviation over radii). All cuspidal readings are scored;
 * the assignment uses the one within tolerance that keeps rows distinct and
 * excludes the fewest radii. Throws ReconciliationFailure
 * naming the offending character indices when some class has no row within
 * kMatchTolerance or two classes share a row, unless throw_on_failure is false.
 */
MatchReport match_formulas_to_oracle(const FieldCtx& ctx, const SphericalTable& table,
                                     bool throw_on_failure = true);
MatchReport match_formulas_to_oracle(const FieldCtx& ctx, Residue r_s, bool throw_on_failure = true);

}  // namespace fuhp
