#pragma once

#include <optional>

#include "csr/structure.hpp"

namespace csr {

enum class Direction { Forward, Reverse };

enum class MoveKind { Single, Step, DepthSingle, HomogeneousStep, EquidepthStep };

/// One transition.  source is the configuration the move is taken from;
/// forward moves grow it, reverse moves shrink it.  labels is the sorted
/// label multiset of the moved events; depth is set for DepthSingle only and
/// is always measured in the larger of the two configurations.
struct Move {
    Direction direction = Direction::Forward;
    MoveKind kind = MoveKind::Single;
    Configuration source;
    Configuration target;
    std::vector<std::string> labels;
    std::optional<int> depth;

    bool operator==(const Move&) const = default;
};

std::vector<Move> singles(const ConfigStructure& s, const Configuration& x, Direction dir);

/// All transitions adding (or removing) a non-empty set of pairwise
/// concurrent events; concurrency is judged in the larger configuration.
std::vector<Move> steps(const ConfigStructure& s, const Configuration& x, Direction dir);

std::vector<Move> depth_singles(const ConfigStructure& s, const Configuration& x, Direction dir);

enum class StepConstraint { Homogeneous, EquidepthHomogeneous };

/// Steps whose events all carry one label; EquidepthHomogeneous additionally
/// requires one common depth in the larger configuration.
std::vector<Move> special_steps(const ConfigStructure& s, const Configuration& x, Direction dir,
                                StepConstraint constraint);

/// "FWD kind=step label(s)=a,a target=[e1,e2]"; depth singles add "k=<n>".
std::string render_move(const Move& move);

std::string_view direction_name(Direction dir);  // "FWD" / "REV"
std::string_view move_kind_name(MoveKind kind);  // single|step|dsingle|hstep|ehstep

}  // namespace csr
