#include "catchforge/prompts/registry.hpp"

namespace catchforge::prompts {

namespace {

// Reconstructed SST knowledge base. The knowledge text injected into the
// system prompt of every exported sample; assembled from the project
// glossary, not copied from any published manual.
const char* kKnowledge = R"KB(# Single-Session Therapy (SST) Knowledge Base

## Core Idea
Single-Session Therapy treats one session as a complete intervention. The session addresses the client's single most pressing issue and follows a fixed structure: a goal identification stage, a working stage, and an ending stage.

## Counseling Goal
A specific, mutually agreed direction of psychological change achievable within the session. The goal must be unique (one core issue), specific, feasible, positively phrased, measurable by the end of the session, and psychological: it targets the client's internal experience (emotion regulation, cognitive patterns, behavioral habits, interpersonal dynamics) rather than the resolution of external practical problems or changes to other people's behavior.

## Resources
Conditions and capabilities available to the client that can support coping and goal attainment. Internal resources include emotional regulation abilities, past successful coping experiences, personal strengths, and resilience. External resources include social support (family, friends, colleagues, community), professional services, and favorable circumstances. Positive resources can be converted into concrete actions toward the goal; non-positive resources are explored but cannot be converted (the client lacks them or resists them) and the focus shifts onward.

## Solution
A concrete, feasible action plan the client can execute on their own, derived from the positive resource. Solutions are developed jointly, made specific, and if possible rehearsed during the session so the client leaves with something actionable.

## Stage Structure
1. Goal identification stage: build rapport through empathy, genuineness, and unconditional positive regard; gather information with open-ended questions; follow the "less is more" principle to converge on the single most urgent issue; jointly confirm the counseling goal.
2. Working stage: explore resources around the goal, typically internal before external; acknowledge directions that do not convert and move on; converge on the positive resource; convert it into a concrete action plan and rehearse it.
3. Ending stage: summarize the session, give feedback and encouragement, affirm the client's strengths and motivation, assign homework aligned with the agreed action plan, and close constructively.

## Treatment Fidelity
The degree to which the session follows this staged protocol: goal setting before resource work, thorough resource exploration before action planning, and a complete closing. Staying on protocol prevents drift away from the therapeutic trajectory.
)KB";

}  // namespace

const KnowledgeDoc& sst_knowledge() {
    static const KnowledgeDoc doc{kKnowledge, "sst-kb-1"};
    return doc;
}

}  // namespace catchforge::prompts
