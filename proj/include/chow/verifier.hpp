#pragma once

// The C1..C12 check suite over the GO(2n) presentation R, plus torsion lifts.
// Every check is a finite statement about graded pieces in degrees up to a
// caller-supplied bound.

#include "chow/catalog.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chow {

using Json = nlohmann::ordered_json;

enum class CheckId { C1 = 1, C2, C3, C4, C5, C6, C7, C8, C9, C10, C11, C12 };

inline constexpr std::array<CheckId, 12> all_checks{CheckId::C1, CheckId::C2,  CheckId::C3,  CheckId::C4,
                                                    CheckId::C5, CheckId::C6,  CheckId::C7,  CheckId::C8,
                                                    CheckId::C9, CheckId::C10, CheckId::C11, CheckId::C12};

std::string to_string(CheckId id);
/// "C1".."C12" (case-insensitive); nullopt otherwise.
std::optional<CheckId> parse_check_id(std::string_view text);
/// One-line statement of what the check asserts.
std::string_view check_statement(CheckId id);

/// Thrown when a computation would exceed the configured caps. Distinct from
/// a failing check.
class ResourceLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VerifierOptions {
    unsigned degree_cap = 64;
    /// Largest admissible monomial basis of a single graded piece.
    std::size_t basis_cap = 50000;
    /// Worker threads used to precompute graded pieces (1 = sequential).
    unsigned threads = 1;
};

struct DegreeResult {
    unsigned m = 0;
    bool passed = true;
    /// Set on failure: offending elements or mismatching structures.
    std::optional<Json> witness;
    /// Short human-readable summary for table output.
    std::string detail;
};

struct CheckReport {
    CheckId id = CheckId::C1;
    unsigned n = 1;
    unsigned max_degree = 0;
    std::vector<DegreeResult> per_degree;
    bool passed = true;
    std::string note;
};

unsigned default_degree_bound(unsigned n);

/// Throws std::invalid_argument for n == 0 and ResourceLimitExceeded past
/// the caps.
CheckReport run_check(CheckId id, unsigned n, unsigned max_degree, const VerifierOptions& options = {});

struct TorsionLift {
    unsigned n = 0;
    unsigned p = 0;
    Polynomial element;
    /// Monomial coordinates in the degree-p basis of R.
    SparseVector coordinates;
    /// Additive order of the class; 2 for a genuine lift.
    Integer order = 0;
    bool doubled_in_lattice = false;
    bool maps_to_chern_class = false;

    bool certified() const { return doubled_in_lattice && maps_to_chern_class; }
};

/// A 2-torsion class of R_p whose image in the O-ring is c_p. Requires p odd,
/// 1 <= p < 2n. Throws std::logic_error if no lift exists.
TorsionLift find_torsion_lift(unsigned n, unsigned p);

struct SuiteResult {
    std::vector<CheckReport> reports;
    std::vector<TorsionLift> lifts;
    bool passed() const;
};

SuiteResult run_suite(unsigned n, unsigned max_degree, const VerifierOptions& options = {});

Json report_to_json(const CheckReport& r);
Json lift_to_json(const TorsionLift& l);

}  // namespace chow
