#pragma once

#include <string>
#include <vector>

#include "catchforge/core/types.hpp"

namespace catchforge::core {

/// Accept, or Reject carrying the violated rule name.
struct ValidityVerdict {
    bool ok = false;
    std::string rule;  // empty when ok

    static ValidityVerdict accept() { return {true, {}}; }
    static ValidityVerdict reject(std::string r) { return {false, std::move(r)}; }
    explicit operator bool() const { return ok; }
};

struct Violation {
    std::string rule;
    int turn_index = 0;  // 0 when not tied to a specific turn
};

/// Stage-transition legality. Total and deterministic; exactly seven
/// (previous, step, expected) triples are legal:
///   remain keeps the stage (3), step shifts exist only inside the goal and
///   working stages (2), and the only stage transitions are
///   goal -> working and working -> ending (2).
ValidityVerdict validate_transition(Stage previous, NextStepKind step, Stage expected);

/// Chain contiguity (labels 1..n, next_label k+1), exactly one positive
/// resource in terminal position, non-empty solution.
ValidityVerdict validate_resource_plan(const ResourcePlan& plan);

/// Structural checks over a stitched dialogue: monotone stage labels,
/// presence of every stage, strictly increasing indices, no empty utterances.
/// The counselor slot may be empty only on the final turn (answered by the
/// closing message).
std::vector<Violation> validate_dialogue(const StagedDialogue& dialogue);

}  // namespace catchforge::core
