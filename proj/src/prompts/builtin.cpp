// Bundled prompt templates. Placeholders use [name]; literal brackets are
// doubled ([[ and ]]). Bodies can be overridden at runtime from a directory
// of <template_id>.txt files without rebuilding.
#include <string>
#include <utility>
#include <vector>

namespace catchforge::prompts::detail {

namespace {

const char* kGoalGen = R"PT(You are an excellent counselor specializing in Single Session Therapy (SST). Based on the client's self-report, your task is to formulate a goal for this session (summarized in 1-2 sentences).

## Client's Self-report
[client info]

## Notes
1. The goal must meet the following criteria:
- **Unique**: Focus on only one core (most urgent and critical) issue to avoid dispersing direction and energy by addressing multiple issues simultaneously.
- **Specific**: The goal must be clear and concrete. It should explicitly describe the desired change in behavior, emotion, or cognition.
- **Feasible**: The goal should be achievable within the client's existing resources, abilities, and time. It must be grounded in the client's self-report.
- **Positive**: The goal should be expressed in positive language, emphasizing the desired positive state rather than the avoidance or elimination of negative conditions.
- **Measurable**: The goal should be able to be evaluated or verified at the end of the session, based on observable behaviors, emotional changes, or cognitive shifts.
- **Psychological, not practical**: The goal should focus on the client's internal psychological domain, such as emotion regulation, cognitive change, or behavioral pattern adjustment, rather than solving external practical problems.

2. The formulated goal should be concise and clear, avoiding complex terminology or overly technical language. It should be easy to understand and remember, without explaining how to assess it.

## Output format (strictly follow):
goal:...)PT";

const char* kTraitExtract = R"PT(You are a personality assessment specialist. Based on the client's self-report below, extract the client's Big Five personality traits as short qualitative descriptors (one phrase per trait), grounded only in what the text supports.

## Client's Self-report
[client info]

## Output Format
Return the result strictly in the following JSON format:
{
  "openness": "{short descriptor}",
  "conscientiousness": "{short descriptor}",
  "extraversion": "{short descriptor}",
  "agreeableness": "{short descriptor}",
  "neuroticism": "{short descriptor}"
})PT";

const char* kGoalCheck = R"PT(You are a supervisor of Single Session Therapy (SST). Review the proposed counseling goal against the client's self-report and judge each criterion independently.

## Client's Self-report
[client info]

## Proposed Goal
[goal info]

## Criteria
- unique: focuses on only one core issue
- specific: clear and concrete desired change
- feasible: achievable with the client's resources, abilities, and time
- positive: expressed as a desired positive state
- measurable: verifiable at the end of the session
- psychological: targets the client's internal experience, not external practical problems or other people's actions

## Output Format
Return the result strictly in the following JSON format:
{
  "unique": true,
  "specific": true,
  "feasible": true,
  "positive": true,
  "measurable": true,
  "psychological": true,
  "analysis": "{brief reasoning per criterion}"
})PT";

const char* kResourceGen = R"PT(You are an excellent supervisor in SST (Single Session Therapy). Your task is to create a supplemental counseling case based on the requirements below and return the results in the specified JSON format:

## Client's Self-Report
[client info]

## Client Personality Traits
[personality info]

## Counseling Goal
[goal info]

## Resource Explanation
1. Definition of Internal and External Resources:
  - Internal Resources: The client's past problem-solving strategies, emotional regulation techniques, personal interests, and other internal strengths.
  - External Resources: The client's social network (family, friends, colleagues, etc.), community or group support systems, and available life/work conditions.

2. Definition of Positive and Non-Positive Resources:
  - Non-Positive Resources: Resource directions explored during the session but could not be effectively transformed into action plans due to various reasons, such as the client lacking the resource or being resistant to it.
  - Positive Resources: Resources that directly support achieving the counseling goal and can be deeply explored and transformed into specific actions.

## Task Requirements: Dialogue Element Creation
1. Solution Conception:
  - First, based on the self-report, personality traits, and counseling goal, devise one solution.
  - Ensure the solution is specific, feasible, entirely executable by the client, and positively contributes to the counseling goal.
  - Ensure the solution fits the client's background information and is closely aligned with the goal.
  - Avoid vague or unrealistic suggestions (e.g., "just take deep breaths" or "find another counselor").

2. Resource Planning and Creation:
  - Based on the chosen best solution, identify one key **positive resource** that directly supports the solution's execution.
  - Then create **[negative num]** non-positive resources: these are resources explored during counseling but ultimately could not be utilized. Describe how the counselor attempted to explore them, the method of exploration, why they failed to be converted, and how the focus shifted to the next resource.
  - Ensure smooth logical transitions between resources, typically starting with internal resources and then moving to external ones.
  - Only one positive resource is allowed (as the final item), which should be clearly linked to the action plan.

3. Integration of Resources and Solution:
  - Ensure there is a coherent flow between resources to facilitate dialogue construction.
  - Ensure a clear and reasonable connection between the positive resource and the solution, and describe in detail how the positive resource is transformed into a concrete, feasible action plan.
  - Keep the language concise and clear; avoid overly technical or professional jargon.

## Output Format
- Strictly follow the JSON format below, and fill in each field with your analysis:
{
  "resource": [[
    {
      "label": "Resource label: 1, 2, 3, etc.",
      "type": "internal/external",
      "valence": "positive/negative",
      "description": "Resource description (10-20 characters)",
      "relevance": "Resource's relevance to the counseling goal (30-50 characters)",
      "next_label": "Next resource label: 2, 3, etc. (null for the last one)",
      "change": "Detailed description of the transition from this resource to the next or how it's turned into an action (>80 characters)"
    }
  ]],
  "solution": "{Solution description}"
})PT";

const char* kStageGoalDialogue = R"PT(## Example dialogue and analysis
[example]

## **Background Information** (Note: The counselor starts with no knowledge of this information and must naturally elicit it during the dialogue)
Client's Self-Report
[client info]
Client Personality Traits
[personality info]
Counseling Goal
[goal info]

## **Task**
Based on the provided background information of the client, simulate a realistic counseling session following the logic of SST therapy, generating a multi-turn dialogue for the **Goal Clarification Phase** (**[turn num] turns**).

### **SST Goal Clarification Phase Process**
- **Core Task**: Build trust and gather information to eventually identify the core goal of this counseling session (unique, specific, and of greatest concern to the client).
- **Key Steps**:
  - **Greeting**: The counselor and client exchange simple greetings to create a relaxed atmosphere.
  - **Building Rapport**: The counselor initiates the conversation with warmth and empathy, avoiding direct discussion of problems.
  - **Information Gathering**: The counselor uses open-ended questions to gradually collect the client's basic information in preparation for goal clarification.
  - **Goal Clarification**: In the final round of this phase, the counselor and client work together to clearly identify the specific goal of this session. Ensure alignment with the **Counseling Goal** in the background information.
- **Prohibited**: The counselor must not directly quote or reference content from the **background information**, nor should they directly state the **Counseling Goal**; it must be naturally revealed through dialogue.

### **Language and Dialogue Rules**
1. **Counselor's Language**:
- Natural, human-like, warm, and conversational, avoiding technical or clinical terms.
- Avoid closed-ended questions, and primarily use open-ended questions to encourage the client to elaborate.
- Each turn should be no more than two sentences, and must be closely tied to the client's previous statement.
- Use empathy, encouragement, and concretization techniques. Avoid invalidating the client's feelings.
2. **Client's Language**:
- Should reflect a realistic counseling setting, gradually revealing information in response to the counselor's prompts; do not disclose all background details at once.
- Client responses must stay closely connected to the counselor's remarks and align with their background information.
- The client's communication style throughout the dialogue should reflect the Big Five personality traits above.
3. **Number of Dialogue Turns**:
- Ensure the dialogue has exactly **[turn num] turns**, with each turn consisting of one statement by the client and one by the counselor.
- The client's statement should be both the **starting** and **ending** turn of this phase.

## **Output Format Requirements**: Strictly follow the format and target number of turns below
Turn 1:
Client: ...
Counselor: ...
Turn 2:
...
Turn [turn num]:
Client: ...)PT";

const char* kStageWorkingDialogue = R"PT(## Example Dialogue and Analysis
[example]

## **Background Information** (Note: The counselor is completely unaware of this information at the beginning and must naturally elicit it through the dialogue)
Client Personality Traits
[personality info]
Counseling Goals
[goal info]
Resource Exploration Path
[resource]
Solution
[solution]

## **Task**
Simulate a realistic counseling scenario that follows the logic of SST, and continue generating multi-turn counseling dialogue for the **Working Phase** based on the **Goal Clarification Phase Dialogue** and guided by the **Resource Exploration Path** (**[turn num] turns**).
- **Note**:
  - Follow the **Resource Exploration Path** in strict order (no omissions): start with **non-positive resources**, then explore other resources, and finally explore **positive resources** and transform them into behavioral rehearsals.
  - The counselor must naturally elicit information through conversation, rather than referencing the background directly.
  - Do not mention any content unrelated to the client's background.
  - The counselor must avoid language implying the end of the session (e.g., "goodbye," "talk to you next time," etc.)

### **Language and Dialogue Rules**
1. **Counselor Language**:
- Use natural, warm, and conversational expressions.
- Avoid professional jargon (e.g., "resources," "behavioral rehearsal," "solution rehearsal," etc.)
- Avoid closed-ended questions; prefer open-ended ones.
- Each turn should not exceed two sentences (<50 words), and should closely respond to the client's previous message.
- Use techniques like empathy, encouragement, and concretization, and avoid invalidating the client's feelings.

2. **Client Language**:
- Reflect a realistic counseling setting, revealing information progressively.
- Responses should closely relate to the counselor's questions and their own background.
- Language style must consistently reflect the **Client Personality Traits**.

3. **Dialogue Turns**:
- Ensure there are a total of [turn num] turns (each turn consists of one counselor utterance and one client response).
- The Working Phase begins with a counselor's utterance and ends with a client's response.
- Ensure a natural transition from the last line of the **Goal Clarification Phase Dialogue**.

### Goal Clarification Phase Dialogue
[dialogue]

### **Output Format Requirements**: Strictly follow the format and required number of turns below, and generate the dialogue until turn [turn num].
Counselor: ...
Turn [begin turn]:
Client: ...
Counselor: ...
...
Turn [turn num]:
Client: ...)PT";

const char* kStageEnding = R"PT(## **Background Information**
Counseling Goals
[goal info]
Solution
[solution]
Dialogue History
[dialogue]

## **Task**
Based on the **Dialogue History**, simulate a realistic counseling scenario consistent with the logic of SST and generate the counselor's concluding feedback during the **Ending Phase**:

### **SST Ending Phase Summary Statement**
- **Core Task**: Provide a feedback summary and encouragement for the session, affirm the client's strengths, and assign a homework task to help maintain the progress made.
- **Include the following elements**:
  - **Feedback Summary**: Briefly recap the client's main struggles and the helpful elements they've discovered, and emphasize their **motivation to change**.
  - **Encouragement for Action**: Assign a concrete and achievable homework task (consistent with the **Solution** from the working phase). Ensure the task fits the client's actual situation and goals. The language should be natural, warm, and non-technical.
  - **Emotional Connection**: Express understanding and support, affirm the client's effort and capacity for change, and offer encouragement.

### **Important Notes**
- The response must include all three parts: summary, homework, and emotional connection, and should be a **single, long reply (3-5 sentences)**.
- Only generate the **counselor's response**, do not include any headings or additional content.
- **Avoid all professional jargon** (e.g., "resources," "rehearsed actions," "solution rehearsal"); use natural, heartfelt, conversational language instead.

### **Output Format Requirement**: Strictly follow the format below
counselor: ...)PT";

const char* kEndingCheck = R"PT(You are a supervisor of Single Session Therapy (SST). Review the counselor's closing message below and judge whether it contains each of the required elements.

## Counseling Goal
[goal info]

## Agreed Solution
[solution]

## Closing Message
[closing]

## Required Elements
- summary: recaps the client's main struggles and helpful discoveries from the session
- homework: assigns a concrete task consistent with the agreed solution
- encouragement: expresses support and affirms the client's capacity for change

## Output Format
Return the result strictly in the following JSON format:
{
  "summary": true,
  "homework": true,
  "encouragement": true,
  "analysis": "{brief reasoning}"
})PT";

const char* kStructureCheck = R"PT(You are a supervisor of Single-Session Therapy (SST) and are responsible for reviewing the dialogue records of psychological counselors. Based on the **Single-Session Therapy (SST) Guideline Manual**, assess the quality of the counseling dialogue according to the following checklist and return the results in the specified JSON format:

## Counseling Goal
[goal info]

## Counseling Dialogue
[dialogue]

## Checklist
1. Goal identification Phase: Did the counselor first establish a good relationship with the client, and by the end of this phase, jointly agree on a goal with the client that aligns with the **Counseling Goal**?
2. Working Phase:
- Did the counselor **thoroughly explore** the client's internal and external resources instead of prematurely moving into action rehearsal?
- Did the counselor conduct action rehearsal when transitioning to the **Ending Phase**?
- Did the counselor maintain the dialogue focused on the **Counseling Goal** throughout this phase?
3. Ending Phase: Did the counselor provide feedback, encouragement, and affirmation of the client's strengths? Did the counselor assign homework, ensure that the summary content matched the previous dialogue, and that the assigned homework aligned with the action rehearsal?

## Output Format Specification
- Output must strictly follow the JSON format below, with the analysis content filled into the corresponding fields:
{
  "analysis": "{Detailed analysis of the review process}",
  "check_result": "{true/false}"
})PT";

const char* kJargonCheck = R"PT(You are a supervisor for SST psychological counseling. Your task is to review the **counselor's response** to ensure it meets the following criteria and return the result in the specified JSON format:

## Counselor's Response
[counselor response]

## Review Criteria
1. Is the language natural and conversational, as in a real counseling dialogue?
2. Does it avoid professional or formal expressions (such as [term examples]), especially SST-related technical terms?

## Notes
1. If all criteria are met, set "check" to true. Otherwise, set it to false.
2. If the result is false, **rewrite the response by strictly preserving the original meaning but replacing all professional terms with natural, everyday expressions**. If the result is true, no rewrite is needed.

## Output Format
Please return the result in the following JSON format:
{
  "check": "{true/false}",
  "feedback": "{analysis of the review process}",
  "rewrite": "{rewritten response}"
})PT";

const char* kResourceOrderCheck = R"PT(You are a supervisor of Single Session Therapy (SST). Review the working-phase dialogue below and judge whether the counselor explored the listed resources in the given order, starting from the non-positive ones and ending with the positive one.

## Resource Exploration Path
[resource]

## Working Phase Dialogue
[dialogue]

## Output Format
Return the result strictly in the following JSON format:
{
  "analysis": "{brief reasoning}",
  "check_result": "{true/false}"
})PT";

const char* kMemoryAgent = R"PT(# Task Description
You are an SST (Single-Session Therapy) counselor having a session with a client. Your goal in the session is to apply SST therapy knowledge, clarify the client's counseling goal, and help the client find suitable solutions. Based on the dialogue history, complete the following analytical tasks and return the results in the specified JSON format:

## Analytical Tasks
- Review and summarize the client's personal information.
- Analyze and list the client's internal and external resources in detail, and assess their positivity. (If resources have not yet been explored in the dialogue, do not list them.)
- Determine whether the counseling goal has been clarified. If so, specify the goal.

## Format Specification
- Output strictly in the following JSON format, filling in the analysis content in the corresponding fields:
{
  "Personal Information": "{Basic information about the client}",
  "Internal Resources": "{List the client's internal resources and assess their positivity}",
  "External Resources": "{List the client's external resources and assess their positivity}",
  "Counseling Goal": "{The counseling goal}"
}

## Dialogue History
[dialogue history]

## Notes
- Internal resources include: the client's past coping strategies, emotional regulation abilities. Positive qualities and past successful coping experiences can be considered positive resources.
- External resources include: people around the client (such as family, friends, colleagues), social support systems (such as social institutions, organizations, groups), and external environments (such as work or living environments).
- The positivity of a resource depends on whether it helps achieve the counseling goal.
- If resources have not yet been explored in the dialogue, write "None" in the corresponding field.
- The counseling goal refers to the issue the client wants to solve or the goal they want to achieve in this session.
- If the counseling goal has not yet been clarified, write "None" in the corresponding field.)PT";

const char* kPlanAgent = R"PT(You are an SST (Single-Session Therapy) counselor conducting a session. To better plan the consultation process, please complete the following reasoning and analysis task based on the *Single-Session Therapy Manual*, and return the result in the specified JSON format.

## Dialogue History
[dialogue history]

## Counselor's Thoughts
[counselor thinking]

## Analysis Tasks
1. **Determine the current stage and step of the session**
    - **Goal identification Stage (goal)**
      - 1. Building rapport
      - 2. Clarifying the goal
    - **Working Stage (working)**
      - 1. Exploring positive resources (internal / external)
      - 2. Implementing actions and identifying solutions
    - **Ending Stage (ending)**
2. **Plan the next reply direction based on the consultation goal**
  - Choose **next step**: remain / step shift within stage / stage transition
  - Provide reasoning and suggest the forward direction.

## Output Format
- Strictly output in the following JSON format, and fill in your detailed analysis in the corresponding fields:
{
  "analysis": "{Your detailed reasoning in response to the analysis tasks}",
  "previous_stage": "{goal/working/ending}",
  "next_step": "{remain/step shift within stage/stage transition}",
  "expected_stage": "{goal/working/ending}"
}

## Notes
- **remain** is applicable to the following three situations:
  1. Currently in the *Goal Identification* stage, at the "Building rapport" step, but the goal has not yet been clarified;
  2. Currently in the *Working* stage, at the "Exploring positive resources" step, but resources are not yet fully explored;
  3. Currently in the *Working* stage, at the "Implementing actions" step, but still deepening the discussion on how to translate resources into actionable plans.
- **step shift within stage** applies only to two transitions:
  1. Goal Identification Stage: Building rapport -> Clarifying the goal;
  2. Working Stage: Exploring positive resources -> Implementing actions.
- **stage transition** applies only after completing all steps in the current stage, leading to the first step of the next stage. There are only two valid transitions:
  1. Goal Identification -> Working
  2. Working -> Ending
- The following are *necessary and sufficient* conditions for each valid transition:
  1. *Goal Identification -> Working*: Counselor and client have **jointly confirmed the consultation goal**.
  2. *Working (resources) -> Working (actions)*: Resources beneficial to the consultation goal have been identified.
  3. *Working (actions) -> Ending*: The client has expressed intention to take action and expressed gratitude, with no remaining concerns.)PT";

const char* kStrategyAgent = R"PT(You are an SST counselor conducting a Single-Session Therapy (SST) session. Your core objective is to apply SST knowledge to accurately identify the client's consultation goal and assist them in finding a suitable solution. Based on the *Single-Session Therapy (SST) Manual*, complete the following analysis task regarding the response, and output the result in the specified JSON format:

## Counselor's Previous Thoughts
[counselor thinking]

## Response Analysis Task: Based on the client's current response "[client response]", conduct the following analytical thinking, and then provide your response content
- According to the planned stage of progression: **[expected stage]**, refer to the SST manual to select an appropriate response strategy for this stage (ensure the strategy matches the response).
- Determine the tone, SST techniques, mode of expression, and response length (the final stage can be moderately extended, other stages must remain concise and clear).

## Format Requirements
- Output strictly in the following JSON format, and fill in the analytical content in the corresponding fields:
{
  "analysis": "{Analytical thinking behind the response}",
  "response": "{Exact response content}"
}

## Notes
* The reply analysis is based on the previous reflection and should focus on choosing an appropriate strategy for the next stage. Do **not** repeat the content from previous thinking; the focus should be on analyzing the client's current response and planning the next reply.
* Ensure that the **analysis** section does **not** directly state the content of the reply; only the **response** section should present the reply content.
* The counselor's actual response is "[counselor response]". The **response** field must match this reply **exactly**, and the method used must align with the strategic thinking in **analysis**.)PT";

const char* kFusionAgent = R"PT(You are a linguistics expert. Your task is to rewrite the following reflective content by changing all references to the counselor into the first-person pronoun "I". Use appropriate transitional phrases to ensure the logic is clear and coherent.

## Reflective Content
[counselor thinking]

## Guidelines
1. Simulate the counselor's thinking process in order: first reflect on the *progress of the counseling*, then based on that, analyze the *current stage of counseling*, and finally, based on both, think through the *current session's strategy and response approach*.
2. Do not alter the original content of each section. Only change the perspective to first-person and add appropriate connectors to create a natural, internally reflective monologue.
3. The language style should be straightforward, align with the inner voice of "I", and maintain logical clarity without sudden jumps. Avoid redundancy and ensure the flow is natural.
4. Do not directly mention any reply content.

## Output: Refined Reflection
...)PT";

const char* kSemanticCheck = R"PT(You are a supervisor of Single Session Therapy (SST). Verify that the [artifact kind] produced for the current counselor turn is semantically consistent with the dialogue history and the current stage label.

## Dialogue History
[dialogue history]

## Current Stage Label
[stage label]

## Artifact Under Review
[artifact]

## Output Format
Return the result strictly in the following JSON format. When rejecting, put a short verification label (a few words naming the problem) in the "label" field:
{
  "check_result": "{true/false}",
  "label": "{verification label, empty when passing}"
})PT";

const char* kCounselorReasoning = R"PT(# SST knowledge
[SST KB]

You will play the role of a counselor using Single-Session Therapy (SST) in a psychological counseling session, while I will be the client seeking psychological help. Your task is to generate an appropriate response based on the counseling dialogue history and guided by the *Single-Session Therapy (SST) Manual*.

First, you will reflect on the dialogue history and the client's current statement. Then, based on your final reflection, you will respond to the client's current statement. The reflection process should be enclosed in `<think>` and `</think>` tags, for example:
`<think>Content of your reflection</think>Response to the client`.

Make sure your response follows the language guidelines below:

## Counselor Response Language Guidelines:

1. Natural, warm, personable, and conversational - avoid excessive use of professional jargon.
2. The counselor's reply must stay closely connected to what the client just shared.
3. Each reply (except in the closing phase) should not exceed two sentences (less than 50 words).)PT";

const char* kCounselorPlain = R"PT(# SST knowledge
[SST KB]

You will play the role of a counselor using Single-Session Therapy (SST) in a psychological counseling session, while I will be the client seeking psychological help. Your task is to generate an appropriate response based on the counseling dialogue history and guided by the *Single-Session Therapy (SST) Manual*.

Make sure your response follows the language guidelines below:

## Counselor Response Language Guidelines:

1. Natural, warm, personable, and conversational - avoid excessive use of professional jargon.
2. The counselor's reply must stay closely connected to what the client just shared.
3. Each reply (except in the closing phase) should not exceed two sentences (less than 50 words).)PT";

const char* kClientSim = R"PT(You are playing the role of a client in a psychological counseling session. Your task is to generate only one suitable response based on the following counseling dialogue history.

## Guidelines for the client's utterance:
1. Engage authentically with the counselor's inquiries, reflecting the complexity of emotions and reactions typical in counseling sessions.
2. Start the client's utterance with 'Client: '. Ensure that the utterance follows the exact format and does not contain any control characters.
3. The client should maintain the following attitude.

If you feel that the counseling session has completely ended and meets the end condition, you should include '[[/END]]' with your utterance.
***End Conditions:***
- The client feels that their negative thoughts have been resolved.
- The client feels that no further counseling is needed.

Please be mindful of these conditions and ensure ****the session should not end prematurely; it must last at least 20 turns.****

## Client Persona and Negative Thoughts:
[intake form]

## Client's Attitude Towards Counseling:
[attitude]

Generate only the client's utterance for a single turn and please ensure that your responses do not repeat the client's previous utterances. Do not generate the counselor's part of the dialogue.

## Counseling Dialogue History:
[history])PT";

const char* kJudge = R"PT(I want you to act as an evaluator. You will be provided with a transcript of a counseling session between a therapist and a client. Your task is to assess the counselor based on the given criteria. If you believe the therapist falls between two of the descriptors, select the intervening odd number (1, 3, 5). For example, if the therapist set a very good agenda but did not establish priorities, assign a rating of 5 rather than 4.

Please follow these steps:
1. Read the counseling session transcript carefully.
2. Review the evaluation questions and criteria provided below.
3. Assign a score based on the criteria, grading very strictly and uptight. If there is any deficiency, no matter how minor, assign a score of 4 or lower.
4. Output the score and the explanation, separated by a comma. Do not add any prefix.

## Counseling conversation
[conversation]

## Evaluation Question
[question]

## Scoring Criteria
[criteria])PT";

const char* kSfRubric = R"PT(## Evaluation Question
To what extent does the counselor help the client shift from problem narratives toward solutions, hope, and positive experiences?

## Scoring Criteria
Score 0: The counselor spends most of the time focusing on problem causes or negative emotions; no indication of solution orientation or positive reframing.
Score 2: Occasionally brings up possible solutions or positive perspectives, but most exchanges remain focused on problem details; tends to persuade or judge rather than explore.
Score 4: For most of the session, the counselor uses techniques such as inquiry, exception-seeking questions, or cost-benefit analysis to guide the client toward solutions, hope, and positive experiences; only a few segments are problem-focused.
Score 6: The counselor consistently and flexibly uses solution-focused techniques to help the client autonomously build goals and plans, resulting in a clear emotional or cognitive shift toward the positive; demonstrates a highly balanced combination of empathy and action orientation.)PT";

const char* kRaRubric = R"PT(## Evaluation Question
How effectively does the counselor activate the client's internal and external resources and resilience, and help translate them into usable strategies?

## Scoring Criteria
Score 0: Ignores or dismisses the client's resources; emphasizes problems or deficiencies, or engages in direct lecturing.
Score 2: Mentions some resources or supports, but only at a listing level without exploring their usability or relevance.
Score 4: Identifies and specifically explores at least one internal and one external resource, helping the client consider how to apply them to current goals.
Score 6: Systematically uncovers a variety of resources, emphasizes past successes and resilience, and integrates the resources into a detailed action plan, significantly enhancing the client's confidence and motivation.)PT";

const char* kGoRubric = R"PT(## Evaluation Question
How effectively does the counselor assist the client in setting clear goals, tracking progress, and developing feasible action plans?

## Scoring Criteria
Score 0: The conversation lacks clear goals; no discussion of actions; the content is unfocused.
Score 2: Goals or suggestions are mentioned but remain vague and mostly initiated by the counselor without confirmation from the client; no tracking of progress.
Score 4: The counselor collaborates with the client to establish specific, positive, and measurable goals, proposes executable next steps, and revisits the goals or progress at least once during the session.
Score 6: Goals are clearly defined early in the session and consistently reviewed and adjusted throughout the early, middle, and late stages; the action plan includes a timeline, resource allocation, and strategies for overcoming obstacles; the client shows strong commitment and actively refines the steps.)PT";

// The three general-skill rubrics are CTRS-style reconstructions on the same
// anchored 0-6 scale; they are not verbatim from a published scale.
const char* kUnderstandingRubric = R"PT(## Evaluation Question
How well does the counselor grasp the client's internal reality, including the meaning behind the client's statements and the feelings underneath them?

## Scoring Criteria
Score 0: The counselor repeatedly misreads what the client communicates and responds to surface content only; the client has to correct or re-explain.
Score 2: The counselor follows the explicit content but misses the underlying feelings or implications; reflections are generic or occasionally off target.
Score 4: The counselor accurately restates both the content and the main feelings of most client statements, and the client's responses confirm feeling understood.
Score 6: The counselor consistently captures both stated and implied meaning, including subtle shifts in emotion, and communicates that understanding in a way the client visibly builds on.)PT";

const char* kInterpersonalRubric = R"PT(## Evaluation Question
How warm, genuine, and professionally engaged is the counselor in relating to the client throughout the session?

## Scoring Criteria
Score 0: The counselor is cold, mechanical, dismissive, or condescending; the client disengages or becomes defensive.
Score 2: The counselor is polite but distant or formulaic; warmth appears inconsistently and rapport is shallow.
Score 4: The counselor maintains a warm, respectful, and genuine tone for most of the session, adapting manner to the client's state.
Score 6: The counselor shows consistently high warmth, authenticity, and respect, including under strain (e.g., client resistance), and the relationship itself visibly supports the client's openness.)PT";

const char* kCollaborationRubric = R"PT(## Evaluation Question
To what extent does the counselor work with the client as an active partner, sharing direction of the session and building on the client's own ideas?

## Scoring Criteria
Score 0: The counselor lectures or imposes an agenda; the client's input is ignored or overridden.
Score 2: The counselor occasionally invites input but largely drives the session alone; client suggestions are acknowledged without being used.
Score 4: The counselor regularly elicits the client's views, negotiates next steps, and incorporates the client's ideas into the plan.
Score 6: The session is visibly co-constructed: agenda, goals, and action steps are jointly developed, the client's own words shape the plan, and the counselor checks agreement at each decision point.)PT";

const char* kOnetimeDialogue = R"PT(# SST knowledge
[SST KB]

## Background Information
Client's Self-Report
[client info]
Client Personality Traits
[personality info]

## Task
Based on the background information, simulate one complete Single-Session Therapy counseling session between a client and a counselor in a single pass: establish rapport and agree on a goal, explore what can help the client, agree on a concrete action plan, and close with a summary, homework, and encouragement.

## Language Rules
- Natural, warm, conversational language for the counselor; no technical jargon.
- The client reveals information progressively, in line with the personality traits.

## Output Format Requirements: Strictly follow the format below, for a total of [total turns] turns, ending with a single closing message from the counselor.
Turn 1:
Client: ...
Counselor: ...
...
Turn [total turns]:
Client: ...
Counselor: ...
Closing:
Counselor: ...)PT";

const char* kStageLabel = R"PT(You are a supervisor of Single Session Therapy (SST). Assign a stage label to every turn of the counseling dialogue below. Stages are: goal (rapport building and goal clarification), working (resource exploration and action planning), ending (summary, homework, encouragement).

## Counseling Dialogue
[dialogue]

## Output Format
Return the result strictly in the following JSON format, with one entry per turn in order:
{
  "labels": [["goal", "goal", "working", "ending"]]
})PT";

}  // namespace

const std::vector<std::pair<const char*, const char*>>& builtin_templates() {
    static const std::vector<std::pair<const char*, const char*>> t = {
        {"goal_gen", kGoalGen},
        {"trait_extract", kTraitExtract},
        {"goal_check", kGoalCheck},
        {"resource_gen", kResourceGen},
        {"stage_goal_dialogue", kStageGoalDialogue},
        {"stage_working_dialogue", kStageWorkingDialogue},
        {"stage_ending", kStageEnding},
        {"ending_check", kEndingCheck},
        {"structure_check", kStructureCheck},
        {"jargon_check", kJargonCheck},
        {"resource_order_check", kResourceOrderCheck},
        {"memory_agent", kMemoryAgent},
        {"plan_agent", kPlanAgent},
        {"strategy_agent", kStrategyAgent},
        {"fusion_agent", kFusionAgent},
        {"semantic_check", kSemanticCheck},
        {"counselor_reasoning", kCounselorReasoning},
        {"counselor_plain", kCounselorPlain},
        {"client_sim", kClientSim},
        {"judge", kJudge},
        {"sf_rubric", kSfRubric},
        {"ra_rubric", kRaRubric},
        {"go_rubric", kGoRubric},
        {"understanding_rubric", kUnderstandingRubric},
        {"interpersonal_rubric", kInterpersonalRubric},
        {"collaboration_rubric", kCollaborationRubric},
        {"onetime_dialogue", kOnetimeDialogue},
        {"stage_label", kStageLabel},
    };
    return t;
}

}  // namespace catchforge::prompts::detail
