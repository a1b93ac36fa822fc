#include "catchforge/core/render.hpp"

namespace catchforge::core {

std::string render_turns(std::span<const DialogueTurn> turns, int upto_client_of) {
    std::string out;
    for (const auto& t : turns) {
        if (upto_client_of > 0 && t.index > upto_client_of) break;
        out += "Turn " + std::to_string(t.index) + ":\n";
        out += "Client: " + t.client_utterance + "\n";
        if (upto_client_of > 0 && t.index == upto_client_of) break;
        if (!t.counselor_utterance.empty())
            out += "Counselor: " + t.counselor_utterance + "\n";
    }
    return out;
}

std::string render_dialogue(const StagedDialogue& dialogue) {
    std::string out = render_turns(dialogue.turns);
    if (!dialogue.closing.empty()) out += "Counselor: " + dialogue.closing + "\n";
    return out;
}

}  // namespace catchforge::core
