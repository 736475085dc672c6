/** Plain-DOM rendering for the chat flow; all logic sits in the controller. */

import { ChatController } from "./controller.js";
import {
  ChatViewState,
  LIKERT_SCALES,
  SCALE_LABELS,
  SolvedChoice,
  SurveyDraft,
  canSend,
  draftComplete,
  emptyDraft,
} from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export class DomView {
  private controller!: ChatController;
  private systems: string[] = [];
  private draft: SurveyDraft = emptyDraft();
  private surveyShown = false;

  constructor(private readonly root: HTMLElement) {}

  bind(controller: ChatController, systems: string[]): void {
    this.controller = controller;
    this.systems = systems;
    this.update(controller.state);
  }

  update(state: ChatViewState): void {
    if (state.phase === "survey" && !this.surveyShown) {
      this.draft = emptyDraft();
    }
    this.surveyShown = state.phase === "survey";

    this.root.replaceChildren();
    if (state.notice) {
      this.root.append(el("div", "notice", state.notice));
    }
    if (!state.sessionId) {
      this.renderPicker();
      return;
    }
    this.root.append(el("div", "goal-card", state.goalText));
    if (state.phase === "briefing") {
      const begin = el("button", "primary", "Begin chat");
      begin.onclick = () => this.controller.beginChat();
      this.root.append(begin);
      return;
    }
    this.renderLog(state);
    if (state.phase === "chatting") {
      this.renderComposer(state);
    } else if (state.phase === "survey") {
      this.renderSurvey();
    } else {
      const done = el("div", "done-card");
      done.append(
        el("p", "", "All done, thank you. Your completion code:"),
        el("code", "", this.controller.completionCode()),
      );
      const again = el("button", "", "Start a new session");
      again.onclick = () => this.controller.reset();
      this.root.append(done, again);
    }
  }

  private renderPicker(): void {
    const panel = el("div", "picker");
    panel.append(el("p", "", "Pick a dialog system to chat with:"));
    const select = el("select");
    for (const system of this.systems) {
      const option = el("option", "", system);
      option.value = system;
      select.append(option);
    }
    const start = el("button", "primary", "Get a task card");
    start.onclick = () => void this.controller.start(select.value);
    panel.append(select, start);
    this.root.append(panel);
  }

  private renderLog(state: ChatViewState): void {
    const log = el("div", "chat-log");
    for (const message of state.messages) {
      const bubble = el("div", `bubble ${message.sender}`, message.text);
      if (message.failed) {
        bubble.classList.add("failed");
        const retry = el("button", "retry", "retry");
        retry.onclick = () => void this.controller.retry();
        bubble.append(retry);
      }
      log.append(bubble);
    }
    this.root.append(log);
    log.scrollTop = log.scrollHeight;
  }

  private renderComposer(state: ChatViewState): void {
    const row = el("div", "composer");
    const input = el("input");
    input.type = "text";
    input.placeholder = "Type your message";
    input.disabled = state.busy;
    const send = el("button", "primary", "Send");
    const submit = () => {
      if (!canSend(state, input.value)) return;
      const text = input.value;
      input.value = "";
      void this.controller.send(text);
    };
    send.onclick = submit;
    input.onkeydown = (event) => {
      if (event.key === "Enter") submit();
    };
    row.append(input, send);
    this.root.append(row);
    input.focus();
  }

  private renderSurvey(): void {
    const form = el("div", "survey");
    form.append(el("h2", "", "Survey"));

    const solvedRow = el("div", "survey-row");
    solvedRow.append(el("span", "label", "Did the system solve your task?"));
    for (const choice of ["Yes", "Partially", "No"] as SolvedChoice[]) {
      const label = el("label");
      const radio = el("input");
      radio.type = "radio";
      radio.name = "solved";
      radio.checked = this.draft.solved === choice;
      radio.onchange = () => {
        this.draft.solved = choice;
        this.update(this.controller.state);
      };
      label.append(radio, document.createTextNode(choice));
      solvedRow.append(label);
    }
    form.append(solvedRow);

    for (const scale of LIKERT_SCALES) {
      const row = el("div", "survey-row");
      row.append(el("span", "label", `${SCALE_LABELS[scale]} (1-5)`));
      for (let value = 1; value <= 5; value++) {
        const label = el("label");
        const radio = el("input");
        radio.type = "radio";
        radio.name = scale;
        radio.checked = this.draft[scale] === value;
        radio.onchange = () => {
          this.draft[scale] = value;
          this.update(this.controller.state);
        };
        label.append(radio, document.createTextNode(String(value)));
        row.append(label);
      }
      form.append(row);
    }

    const submit = el("button", "primary", "Submit survey");
    submit.disabled = !draftComplete(this.draft);
    submit.onclick = () => void this.controller.submitSurvey(this.draft);
    form.append(submit);
    this.root.append(form);
  }
}
