/** Thin typed wrapper over the dialog service HTTP API. */

export interface TranscriptEntry {
  speaker: "user" | "system";
  text: string;
}

export interface SessionInfo {
  session_id: string;
  system_id: string;
  goal_text: string;
}

export interface SessionView extends SessionInfo {
  transcript: TranscriptEntry[];
  closed: boolean;
  surveyed: boolean;
}

export interface MessageReply {
  reply: string;
  done: boolean;
}

export interface SurveyPayload {
  solved: number;
  satisfaction: number;
  efficiency: number;
  naturalness: number;
  rule_likeness: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      let detail = response.statusText || `request failed (${response.status})`;
      try {
        const body = (await response.json()) as { detail?: unknown };
        if (typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  listSystems(): Promise<{ systems: string[] }> {
    return this.request("/systems");
  }

  createSession(systemId: string): Promise<SessionInfo> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ system_id: systemId }),
    });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request(`/sessions/${sessionId}`);
  }

  sendMessage(sessionId: string, text: string): Promise<MessageReply> {
    return this.request(`/sessions/${sessionId}/messages`, {
      method: "POST",
      body: JSON.stringify({ text }),
    });
  }

  submitSurvey(sessionId: string, survey: SurveyPayload): Promise<{ stored: boolean }> {
    return this.request(`/sessions/${sessionId}/survey`, {
      method: "POST",
      body: JSON.stringify(survey),
    });
  }
}
