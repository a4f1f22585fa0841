#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "csr/moves.hpp"
#include "csr/structure.hpp"

namespace csr {

/// The nine equivalences.  Each kind fixes a move alphabet:
///   IB     forward singles
///   SB     forward steps
///   DB     forward depth-indexed singles
///   RB     forward + reverse singles
///   RSB    forward + reverse steps
///   RHSB   forward singles + reverse homogeneous steps
///   RHESB  forward singles + reverse equidepth homogeneous steps
///   RDB    forward + reverse depth-indexed singles
///   HH     forward/reverse singles over isomorphism triples
enum class EquivalenceKind { IB, SB, DB, RB, RSB, RHSB, RHESB, RDB, HH };

inline constexpr std::array<EquivalenceKind, 9> all_equivalence_kinds = {
    EquivalenceKind::IB,   EquivalenceKind::SB,    EquivalenceKind::DB,
    EquivalenceKind::RB,   EquivalenceKind::RSB,   EquivalenceKind::RHSB,
    EquivalenceKind::RHESB, EquivalenceKind::RDB,  EquivalenceKind::HH,
};

std::string_view kind_name(EquivalenceKind kind);
std::optional<EquivalenceKind> kind_from_name(std::string_view name);

/// Label- and order-preserving bijection between two configurations, as id
/// pairs sorted by the left id.
struct EventIsomorphism {
    std::vector<std::pair<std::string, std::string>> mapping;

    bool operator==(const EventIsomorphism&) const = default;
};

/// A relation over configurations (triples with isomorphisms for HH).
/// maximal_bisimulation returns the greatest fixpoint of the kind's transfer
/// clauses as one of these.
struct CandidateRelation {
    EquivalenceKind kind{};
    std::vector<std::pair<Configuration, Configuration>> pairs;
    std::vector<EventIsomorphism> isos;  // HH only; parallel to pairs
    int rounds = 0;
    std::size_t initial_size = 0;
};

enum class Side { Left, Right };

std::string_view side_name(Side side);

struct WitnessResponse;

/// Attacker strategy: an attacker move together with one subtree per legal
/// defender response.  A node with no responses is a win for the attacker.
struct WitnessTree {
    Side attacker_side = Side::Left;
    Move attacker_move;
    std::vector<WitnessResponse> responses;
};

struct WitnessResponse {
    Configuration target;
    std::optional<EventIsomorphism> iso;  // HH forward responses carry the extension
    WitnessTree next;
};

struct CheckOptions {
    bool want_witness = false;
    /// Restrict the initial relation of reverse-containing kinds to pairs
    /// with equal label multisets.  Sound (any clause-closed relation of a
    /// reverse kind relates only such pairs) and on by default; forward-only
    /// kinds never filter.
    bool apply_label_prefilter = true;
    Limits limits{};
};

/// Greatest fixpoint from the full (pre-filtered) relation; both structures
/// must be stable.
CandidateRelation maximal_bisimulation(EquivalenceKind kind, const ConfigStructure& left,
                                       const ConfigStructure& right,
                                       const CheckOptions& options = {});

struct Verdict {
    EquivalenceKind kind{};
    bool equivalent = false;
    int rounds = 0;
    std::size_t pairs_initial = 0;
    std::size_t pairs_final = 0;
    std::optional<WitnessTree> witness;
};

Verdict check(EquivalenceKind kind, const ConfigStructure& left, const ConfigStructure& right,
              const CheckOptions& options = {});

/// All nine verdicts in the fixed kind order.
std::vector<Verdict> check_all(const ConfigStructure& left, const ConfigStructure& right,
                               const CheckOptions& options = {});

/// Re-checks a given relation against the kind's transfer clauses using the
/// plain per-configuration move enumeration (no fixpoint machinery), so a
/// fixpoint can be certified by an independent code path.
bool verify_relation(EquivalenceKind kind, const ConfigStructure& left,
                     const ConfigStructure& right, const CandidateRelation& relation,
                     std::string* violation = nullptr);

/// Replays a witness: checks every attacker move is legal for the kind, every
/// legal defender response is covered by a child, and every branch ends with
/// the defender stuck.
bool replay_witness(EquivalenceKind kind, const ConfigStructure& left,
                    const ConfigStructure& right, const WitnessTree& tree,
                    std::string* diagnostic = nullptr);

std::string render_witness_text(const WitnessTree& tree, int indent = 0);
std::string render_verdict_text(const Verdict& verdict);

/// {"kind","equivalent","rounds","pairsInitial","pairsFinal","witness"?}
std::string render_verdict_json(const Verdict& verdict);
/// JSON array of verdict documents.
std::string render_verdicts_json(const std::vector<Verdict>& verdicts);

}  // namespace csr
