/** In-memory stand-in for the dialog service, shaped like the real API. */

import type { FetchLike, SurveyPayload, TranscriptEntry } from "../src/api.js";
import type { KeyValueStore } from "../src/controller.js";

interface StoredSession {
  session_id: string;
  system_id: string;
  goal_text: string;
  transcript: TranscriptEntry[];
  closed: boolean;
  surveyed: boolean;
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export class FakeServer {
  sessions = new Map<string, StoredSession>();
  surveys: Array<{ session: string; payload: SurveyPayload }> = [];
  replies: string[] = [];
  calls: Array<{ method: string; path: string }> = [];
  failNext = 0;
  private counter = 0;

  fetch: FetchLike = async (input, init) => {
    if (this.failNext > 0) {
      this.failNext -= 1;
      throw new TypeError("fetch failed");
    }
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const method = init?.method ?? "GET";
    this.calls.push({ method, path });
    const body = init?.body ? JSON.parse(init.body as string) : null;

    if (method === "GET" && path === "/systems") {
      return json({ systems: ["rule", "agen-t"] });
    }
    if (method === "POST" && path === "/sessions") {
      const id = `sess-${this.counter++}`;
      const session: StoredSession = {
        session_id: id,
        system_id: body.system_id,
        goal_text: "You are looking for a cheap restaurant. Say goodbye when done.",
        transcript: [],
        closed: false,
        surveyed: false,
      };
      this.sessions.set(id, session);
      return json({
        session_id: id,
        system_id: session.system_id,
        goal_text: session.goal_text,
      });
    }

    const match = path.match(/^\/sessions\/([^/]+)(\/messages|\/survey)?$/);
    if (!match) return json({ detail: "no such route" }, 404);
    const session = this.sessions.get(match[1]);
    if (!session) return json({ detail: "unknown session" }, 404);

    if (!match[2] && method === "GET") {
      return json({ ...session, transcript: [...session.transcript] });
    }
    if (match[2] === "/messages" && method === "POST") {
      if (session.closed) return json({ detail: "session closed" }, 409);
      const text = (body.text ?? "").trim();
      if (!text) return json({ detail: "empty message" }, 422);
      const done = text.includes("goodbye");
      const reply = done ? "goodbye !" : `noted: ${text}`;
      session.transcript.push({ speaker: "user", text });
      session.transcript.push({ speaker: "system", text: reply });
      session.closed = done;
      this.replies.push(reply);
      return json({ reply, done });
    }
    if (match[2] === "/survey" && method === "POST") {
      if (![0, 0.5, 1].includes(body.solved)) {
        return json({ detail: "solved must be 0, 0.5 or 1" }, 422);
      }
      if (!session.closed) return json({ detail: "session still open" }, 409);
      if (session.surveyed) return json({ detail: "survey already stored" }, 409);
      session.surveyed = true;
      this.surveys.push({ session: session.session_id, payload: body });
      return json({ stored: true });
    }
    return json({ detail: "no such route" }, 404);
  };
}

export class MemoryStorage implements KeyValueStore {
  private data = new Map<string, string>();

  getItem(key: string): string | null {
    return this.data.has(key) ? (this.data.get(key) as string) : null;
  }

  setItem(key: string, value: string): void {
    this.data.set(key, value);
  }

  removeItem(key: string): void {
    this.data.delete(key);
  }
}

export const nullView = { update: () => {} };
