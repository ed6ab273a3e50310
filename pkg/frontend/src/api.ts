import type {
  ApiErrorBody,
  DeleteErrorResponse,
  MatrixPayload,
  PostErrorRequest,
  PostErrorResponse,
  SamplePayload,
  TasksPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly details: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

/** Thin typed client; the annotator id travels in the X-Annotator header. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly annotator: string,
    private readonly fetchFn: FetchLike = globalThis.fetch.bind(globalThis),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`, {
      method,
      headers: {
        "X-Annotator": this.annotator,
        ...(body !== undefined ? { "Content-Type": "application/json" } : {}),
      },
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    if (!response.ok) {
      let code = "http_error";
      let message = `${response.status} ${response.statusText}`;
      let details: Record<string, unknown> = {};
      try {
        const parsed = (await response.json()) as ApiErrorBody;
        if (parsed.error) {
          code = parsed.error.code;
          message = parsed.error.message;
          details = parsed.error.details ?? {};
        }
      } catch {
        // non-JSON error body; keep the HTTP status text
      }
      throw new ApiError(response.status, code, message, details);
    }
    return (await response.json()) as T;
  }

  getMatrix(): Promise<MatrixPayload> {
    return this.request("GET", "/matrix");
  }

  getTasks(): Promise<TasksPayload> {
    return this.request("GET", "/tasks");
  }

  getSample(sampleId: string, target: string): Promise<SamplePayload> {
    return this.request(
      "GET",
      `/samples/${encodeURIComponent(sampleId)}/${encodeURIComponent(target)}`,
    );
  }

  postError(request: PostErrorRequest): Promise<PostErrorResponse> {
    return this.request("POST", "/errors", request);
  }

  deleteError(annotationId: string): Promise<DeleteErrorResponse> {
    return this.request("DELETE", `/errors/${encodeURIComponent(annotationId)}`);
  }
}
