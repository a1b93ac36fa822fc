#!/usr/bin/env python3
"""Regenerate the deterministic mock scenarios under assets/.

The scenarios drive the offline end-to-end tests: a full pipeline run
(synth -> filter -> annotate -> export) plus a simulate/judge pair.
Run from the repository root:  python3 scripts/make_mock_scenario.py
"""

import json
import os

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

GOAL_TURNS = 6
WORKING_TURNS = 10
N_TURNS = GOAL_TURNS + WORKING_TURNS  # 16

GOAL_TEXT = (
    "Fall asleep before midnight on most weeknights and wake feeling steady "
    "enough to enjoy the morning."
)

SOLUTION_TEXT = (
    "Play badminton twice a week with her cousin and close the notebook by "
    "ten, replacing the midnight journaling with a short gratitude note."
)

RESOURCES = [
    {
        "label": 1,
        "type": "internal",
        "valence": "negative",
        "description": "compulsive midnight journaling",
        "relevance": "keeps her replaying the day instead of sleeping",
        "next_label": 2,
        "change": "shrink it into a two-line gratitude note",
    },
    {
        "label": 2,
        "type": "internal",
        "valence": "negative",
        "description": "rigid overhaul of her calendar",
        "relevance": "an all-or-nothing plan she abandons within days",
        "next_label": 3,
        "change": "swap sweeping plans for one small evening anchor",
    },
    {
        "label": 3,
        "type": "external",
        "valence": "positive",
        "description": "badminton games with her cousin",
        "relevance": "reliable weekly activity that already lifts her mood",
        "next_label": None,
        "change": "turn the games into the anchor of her week",
    },
]

SELF_REPORT = (
    "I am 29 and work at a print shop. For months I have been staying up far "
    "too late, and the mornings feel heavy. I snap at people I like and then "
    "regret it. I want the evenings to stop swallowing me."
)


def marker(i):
    return f"(marker-{i:02d})"


def client_line(i):
    lines = {
        1: "Hi. I have not slept properly in months and it is wearing me down.",
        2: "Mostly I lie awake going over everything I said during the day.",
        3: "If I could pick one thing, I would want my evenings back.",
        4: "Before midnight, I suppose. Waking up without that heavy feeling.",
        5: "Yes. Falling asleep before midnight on weeknights sounds right.",
        6: "That is exactly what I want to work toward.",
        7: "Every night I write pages about what went wrong. I cannot stop.",
        8: "It felt useful once, but now it just winds me up.",
        9: "A two-line note sounds almost too small, but I could try it.",
        10: "I did try redoing my whole calendar once. It lasted three days.",
        11: "True. The big plan collapsed the moment one evening went sideways.",
        12: "One small anchor each evening feels far more doable.",
        13: "There is one bright spot: badminton with my cousin.",
        14: "After we play I sleep like a stone, honestly.",
        15: "Twice a week would be easy. She keeps asking me anyway.",
        16: "I will close the notebook at ten and keep the games going.",
    }
    return f"{lines[i]} {marker(i)}"


def counselor_line(i):
    lines = {
        1: "Welcome. I hear how tiring these months have been for you.",
        2: "Going over the day like that sounds exhausting. What would you rather have?",
        3: "Getting your evenings back. What would that look like concretely?",
        4: "So sleeping before midnight and gentler mornings. Shall we aim for that?",
        5: "Let us make that our shared aim for this work together.",
        # 6 is the bridge, supplied separately
        7: "That nightly journaling sounds like it has taken on a life of its own.",
        8: "What if the writing kept its place but shrank to two kind lines?",
        9: "Small is the point. A note you can finish before the kettle boils.",
        10: "Three days is still information. What made the big plan so fragile?",
        11: "Sweeping changes often snap. A single evening anchor tends to hold.",
        12: "Good. Let us make that anchor concrete tonight.",
        13: "Tell me more about those games with your cousin.",
        14: "So your body already knows one road to deep sleep.",
        15: "Twice a week, already invited. That is a gift waiting to be used.",
    }
    return f"{lines[i]} ({i:02d}k)"


BRIDGE = (
    "Then we have our goal. Next, let us look at what already happens in your "
    "evenings and what could carry you toward it. (06k)"
)

CLOSING = (
    "We set out to get your evenings back, and you named a clear aim: asleep "
    "before midnight with steadier mornings. You saw how the midnight "
    "journaling and the sweeping calendar plans worked against you, and you "
    "chose the badminton games and a two-line note as your anchors. For this "
    "week, close the notebook at ten each night and play twice with your "
    "cousin. You found these answers yourself, and that same steadiness will "
    "carry you forward."
)


def dialogue_reply(turn_range, last_client_only):
    parts = []
    for i in turn_range:
        parts.append(f"Turn {i}:")
        parts.append(f"Client: {client_line(i)}")
        if not (last_client_only and i == turn_range[-1]):
            parts.append(f"Counselor: {counselor_line(i)}")
    return "\n".join(parts)


def memory_json(i):
    claimed = i >= GOAL_TURNS  # the goal may be recorded from its final turn on
    internal = "None"
    external = "None"
    if i >= 9:
        internal = "midnight journaling can shrink to a two-line note"
    if i >= 13:
        external = "weekly badminton games with her cousin"
    return json.dumps(
        {
            "Personal Information": f"29, print shop, months of late nights {marker(i)}",
            "Internal Resources": internal,
            "External Resources": external,
            "Counseling Goal": GOAL_TEXT if claimed else "None",
        }
    )


def plan_json(i):
    if i == 1:
        prev, step, exp = "goal", "remain", "goal"
    elif i <= GOAL_TURNS:
        prev, step, exp = "goal", "remain", "goal"
    elif i == GOAL_TURNS + 1:
        prev, step, exp = "goal", "stage transition", "working"
    elif i <= N_TURNS:
        prev, step, exp = "working", "remain", "working"
    else:
        prev, step, exp = "working", "stage transition", "ending"
    return json.dumps(
        {
            "analysis": f"The client is settling into the work; hold the current course. {marker(min(i, N_TURNS))}",
            "previous_stage": prev,
            "next_step": step,
            "expected_stage": exp,
        }
    )


def strategy_json(i, response):
    return json.dumps(
        {
            "analysis": f"Reflect what the client offered and keep the thread. {marker(min(i, N_TURNS))}",
            "response": response,
        }
    )


def fused_text(i):
    return (
        f"The client's last message moves us along; I will answer in a way "
        f"that keeps the agreed direction. {marker(min(i, N_TURNS))}"
    )


def pipeline_rules():
    rules = []

    def rule(tag=None, match=None, response="", temperature=None):
        r = {"response": response}
        if tag is not None:
            r["tag"] = tag
        if match is not None:
            r["match"] = match
        if temperature is not None:
            r["temperature"] = temperature
        rules.append(r)

    # --- synthesis ---
    rule(
        tag="trait_extract",
        response=json.dumps(
            {
                "openness": "curious but worn down",
                "conscientiousness": "dutiful to a fault",
                "extraversion": "quiet, warms up slowly",
                "agreeableness": "kind, avoids conflict",
                "neuroticism": "prone to late-night rumination",
            }
        ),
    )
    rule(tag="goal_gen", response=f"Goal: {GOAL_TEXT}")
    rule(
        tag="goal_check",
        response=json.dumps(
            {
                "unique": True,
                "specific": True,
                "feasible": True,
                "positive": True,
                "measurable": True,
                "psychological": True,
            }
        ),
    )
    rule(
        tag="resource_gen",
        response=json.dumps({"resource": RESOURCES, "solution": SOLUTION_TEXT}),
    )
    rule(
        tag="stage_goal_dialogue",
        response=dialogue_reply(range(1, GOAL_TURNS + 1), last_client_only=True),
    )
    working = "Counselor: " + BRIDGE + "\n" + dialogue_reply(
        range(GOAL_TURNS + 1, N_TURNS + 1), last_client_only=True
    )
    rule(tag="stage_working_dialogue", response=working)
    rule(tag="resource_order_check", response=json.dumps({"check_result": True}))
    rule(tag="stage_ending", response="Counselor: " + CLOSING)
    rule(
        tag="ending_check",
        response=json.dumps({"summary": True, "homework": True, "encouragement": True}),
    )

    # --- quality filter ---
    for voter in (1, 2, 3):
        rule(
            tag=f"structure_check#{voter}",
            response=json.dumps({"analysis": "well formed", "check_result": True}),
        )

    # --- annotation agents ---
    # Histories accumulate, so rules are keyed on the newest marker and
    # ordered newest-first: the first match is always the current turn.
    annotated = list(range(1, N_TURNS)) + [N_TURNS + 1]  # turn 16 is client-only
    for i in sorted(annotated, reverse=True):
        m = marker(min(i, N_TURNS))
        reply = CLOSING if i == N_TURNS + 1 else (
            BRIDGE if i == GOAL_TURNS else counselor_line(i)
        )
        rule(tag="memory_agent", match=m, response=memory_json(i))
        rule(tag="plan_agent", match=m, response=plan_json(i))
        rule(tag="strategy_agent", match=m, response=strategy_json(i, reply))
        rule(tag="fusion_agent", match=m, response=fused_text(i))
    rule(tag="semantic_check", response=json.dumps({"check_result": True}))

    return rules


def simulate_rules():
    counselor = [
        {
            "tag": "counselor",
            "response": "<think>Stay with the client's pace and ask for one concrete "
            "detail.</think>I hear you. What would a slightly better evening look like?",
        }
    ]
    client = []
    # The history the client sees while producing turn t contains t-1 turns,
    # so "Turn 19:" marks the moment turn 20 is being written.
    client.append(
        {
            "tag": "client_sim",
            "match": "Turn 19:",
            "response": "I think I have what I need. Thank you. [/END]",
        }
    )
    # An early end token must be ignored by the session runner.
    client.append(
        {
            "tag": "client_sim",
            "match": "Turn 2:",
            "response": "Honestly I would rather stop here. [/END] But fine, the "
            "evenings are the worst part.",
        }
    )
    client.append(
        {
            "tag": "client_sim",
            "response": "The nights keep getting away from me and I wake up tense.",
        }
    )
    judge = []
    scores = {
        "sf": "5, the counselor keeps a clear solution-building thread.",
        "ra": "4, strengths surface but could be pushed further.",
        "go": "5, a concrete goal emerges early.",
        "understanding": "6, reflections track the client closely.",
        "interpersonal": "5, warm and unhurried.",
        "collaboration": "4, the client co-authors most steps.",
    }
    for metric, reply in scores.items():
        judge.append({"tag": f"judge:{metric}", "response": reply})
    return counselor, client, judge


def main():
    def write_jsonl(rel, records):
        path = os.path.join(ROOT, rel)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as f:
            for r in records:
                f.write(json.dumps(r) + "\n")
        print(f"wrote {rel} ({len(records)} records)")

    write_jsonl("assets/mock/pipeline_scenario.jsonl", pipeline_rules())

    counselor, client, judge = simulate_rules()
    write_jsonl("assets/mock/counselor_scenario.jsonl", counselor)
    write_jsonl("assets/mock/client_scenario.jsonl", client)
    write_jsonl("assets/mock/judge_scenario.jsonl", judge)

    write_jsonl(
        "assets/cases/e2e_cases.jsonl",
        [{"case_id": "case-001", "self_report": SELF_REPORT, "source": "synthetic"}],
    )

    forms = []
    personas = {
        "open": "Graduate student, 24, overwhelmed by thesis deadlines.",
        "neutral": "Nurse, 31, drained by rotating night shifts.",
        "resistant": "Accountant, 45, pressured into counseling by family.",
    }
    thoughts = {
        "open": "If I slip once, the whole plan is ruined.",
        "neutral": "Nothing I try ever sticks.",
        "resistant": "Talking about this will not change anything.",
    }
    for idx, attitude in enumerate(["open", "neutral", "resistant"], start=1):
        forms.append(
            {
                "form_id": f"form-{idx:03d}",
                "persona": personas[attitude],
                "negative_thoughts": thoughts[attitude],
                "attitude": attitude,
            }
        )
    write_jsonl("assets/forms/intake_forms.jsonl", forms)

    write_jsonl(
        "assets/cases/sample_cases.jsonl",
        [
            {
                "case_id": f"case-{i:03d}",
                "self_report": f"Sample self report number {i}: sleepless nights and a "
                "short temper that I want to understand.",
                "source": "synthetic",
            }
            for i in range(1, 6)
        ],
    )


if __name__ == "__main__":
    main()
