/** Drives the chat flow against the HTTP API and notifies a view sink.
 *
 * Every system bubble comes out of an API response (the message reply or the
 * stored transcript on restore); the controller never invents dialog text.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  ChatViewState,
  SurveyDraft,
  canSend,
  draftComplete,
  draftPayload,
  initialState,
} from "./state.js";

export interface ViewSink {
  update(state: ChatViewState): void;
}

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export const SESSION_KEY = "dialoglab.session";

export class ChatController {
  state: ChatViewState;

  constructor(
    private readonly api: ApiClient,
    private readonly view: ViewSink,
    private readonly storage: KeyValueStore,
    private readonly now: () => number = Date.now,
  ) {
    this.state = initialState();
  }

  private push(): void {
    this.view.update(this.state);
  }

  completionCode(): string {
    return `LAB-${this.state.sessionId.slice(0, 8).toUpperCase()}`;
  }

  async start(systemId: string): Promise<void> {
    try {
      const info = await this.api.createSession(systemId);
      this.state = {
        ...initialState(),
        sessionId: info.session_id,
        systemId: info.system_id,
        goalText: info.goal_text,
      };
      this.storage.setItem(SESSION_KEY, info.session_id);
    } catch (err) {
      this.state.notice =
        err instanceof ApiError ? err.message : "service unreachable, try again";
    }
    this.push();
  }

  beginChat(): void {
    if (this.state.phase === "briefing" && this.state.sessionId) {
      this.state.phase = "chatting";
      this.state.notice = "";
      this.push();
    }
  }

  async send(text: string): Promise<void> {
    if (!canSend(this.state, text)) return;
    const trimmed = text.trim();
    this.state.messages.push({ sender: "user", text: trimmed, timestamp: this.now() });
    this.state.busy = true;
    this.state.notice = "";
    this.push();
    try {
      const reply = await this.api.sendMessage(this.state.sessionId, trimmed);
      this.state.messages.push({
        sender: "system",
        text: reply.reply,
        timestamp: this.now(),
      });
      if (reply.done) {
        this.state.phase = "survey";
      }
    } catch (err) {
      const last = this.state.messages[this.state.messages.length - 1];
      if (last.sender === "user") last.failed = true;
      this.state.notice =
        err instanceof ApiError ? err.message : "message not sent, use retry";
    }
    this.state.busy = false;
    this.push();
  }

  /** Resend the trailing failed message, if any. */
  async retry(): Promise<void> {
    const last = this.state.messages[this.state.messages.length - 1];
    if (!last || !last.failed) return;
    this.state.messages.pop();
    this.push();
    await this.send(last.text);
  }

  async submitSurvey(draft: SurveyDraft): Promise<void> {
    if (this.state.phase !== "survey" || !draftComplete(draft)) return;
    try {
      await this.api.submitSurvey(this.state.sessionId, draftPayload(draft));
      this.state.phase = "done";
      this.state.notice = "";
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.state.phase = "done";
        this.state.notice = "survey was already recorded";
      } else {
        this.state.notice =
          err instanceof ApiError ? err.message : "survey not stored, try again";
      }
    }
    this.push();
  }

  /** Rebuild the view from the server session, e.g. after a page refresh. */
  async restore(): Promise<boolean> {
    const sessionId = this.storage.getItem(SESSION_KEY);
    if (!sessionId) return false;
    try {
      const session = await this.api.getSession(sessionId);
      this.state = {
        ...initialState(),
        sessionId: session.session_id,
        systemId: session.system_id,
        goalText: session.goal_text,
        messages: session.transcript.map((entry) => ({
          sender: entry.speaker,
          text: entry.text,
          timestamp: this.now(),
        })),
        phase: session.closed ? (session.surveyed ? "done" : "survey") : "chatting",
      };
      this.push();
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        this.storage.removeItem(SESSION_KEY);
        return false;
      }
      this.state.notice = "service unreachable, try again";
      this.push();
      return false;
    }
  }

  reset(): void {
    this.storage.removeItem(SESSION_KEY);
    this.state = initialState();
    this.push();
  }
}
