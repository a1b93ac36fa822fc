#pragma once

#include <span>
#include <string>

#include "catchforge/core/types.hpp"

namespace catchforge::core {

/// History rendering format tag; bump when the layout below changes.
inline constexpr const char* kHistoryFormatVersion = "h1";

/// Render turns as the "Turn N: / Client: / Counselor:" block format used in
/// prompts and exported histories. `upto_client_of` (0 = all turns) cuts the
/// rendering after the client utterance of that turn index, which is the
/// history shape seen when annotating or answering that turn.
std::string render_turns(std::span<const DialogueTurn> turns, int upto_client_of = 0);

/// Full dialogue including the closing message.
std::string render_dialogue(const StagedDialogue& dialogue);

}  // namespace catchforge::core
