/** View state and the pure rules the chat flow must obey.
 *
 * The survey phase is reachable only once the dialog is done, and the send
 * box is live only while chatting; both rules are enforced here rather than
 * in the DOM layer so they can be tested headless.
 */

import type { SurveyPayload } from "./api.js";

export type Phase = "briefing" | "chatting" | "survey" | "done";

export interface ChatMessage {
  sender: "user" | "system";
  text: string;
  timestamp: number;
  failed?: boolean;
}

export interface ChatViewState {
  phase: Phase;
  sessionId: string;
  systemId: string;
  goalText: string;
  messages: ChatMessage[];
  notice: string;
  busy: boolean;
}

export function initialState(): ChatViewState {
  return {
    phase: "briefing",
    sessionId: "",
    systemId: "",
    goalText: "",
    messages: [],
    notice: "",
    busy: false,
  };
}

export function canSend(state: ChatViewState, text: string): boolean {
  return state.phase === "chatting" && !state.busy && text.trim().length > 0;
}

export type SolvedChoice = "Yes" | "Partially" | "No";

export const SOLVED_VALUES: Record<SolvedChoice, number> = {
  Yes: 1,
  Partially: 0.5,
  No: 0,
};

export function solvedValue(choice: SolvedChoice): number {
  return SOLVED_VALUES[choice];
}

export const LIKERT_SCALES = [
  "satisfaction",
  "efficiency",
  "naturalness",
  "rule_likeness",
] as const;

export type LikertScale = (typeof LIKERT_SCALES)[number];

export const SCALE_LABELS: Record<LikertScale, string> = {
  satisfaction: "Satisfaction",
  efficiency: "Efficiency",
  naturalness: "Naturalness",
  rule_likeness: "Rule-likeness",
};

export interface SurveyDraft {
  solved: SolvedChoice | null;
  satisfaction: number | null;
  efficiency: number | null;
  naturalness: number | null;
  rule_likeness: number | null;
}

export function emptyDraft(): SurveyDraft {
  return {
    solved: null,
    satisfaction: null,
    efficiency: null,
    naturalness: null,
    rule_likeness: null,
  };
}

export function draftComplete(draft: SurveyDraft): boolean {
  return (
    draft.solved !== null &&
    LIKERT_SCALES.every((scale) => {
      const value = draft[scale];
      return value !== null && value >= 1 && value <= 5;
    })
  );
}

export function draftPayload(draft: SurveyDraft): SurveyPayload {
  if (!draftComplete(draft)) {
    throw new Error("survey is incomplete");
  }
  return {
    solved: solvedValue(draft.solved as SolvedChoice),
    satisfaction: draft.satisfaction as number,
    efficiency: draft.efficiency as number,
    naturalness: draft.naturalness as number,
    rule_likeness: draft.rule_likeness as number,
  };
}
