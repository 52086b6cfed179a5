/** Thin typed client for the recognition service's REST endpoints. */

import type {
  EvidencePayload,
  GraphView,
  InferenceResult,
  ValidationReport,
} from "./model.js";

export class ServiceError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status?: number,
    public readonly path?: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

const YAML_TYPE = "application/yaml";

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  async getConfigDocument(): Promise<string> {
    const response = await this.fetchFn(`${this.baseUrl}/config`);
    if (!response.ok) {
      throw await this.asError(response);
    }
    return response.text();
  }

  async putConfig(document: string): Promise<ValidationReport> {
    const response = await this.fetchFn(`${this.baseUrl}/config`, {
      method: "PUT",
      headers: { "content-type": YAML_TYPE },
      body: document,
    });
    if (response.status === 200 || response.status === 422) {
      return (await response.json()) as ValidationReport;
    }
    throw await this.asError(response);
  }

  async validateDraft(document: string, signal?: AbortSignal): Promise<ValidationReport> {
    const response = await this.fetchFn(`${this.baseUrl}/validate`, {
      method: "POST",
      headers: { "content-type": YAML_TYPE },
      body: document,
      signal,
    });
    if (!response.ok) {
      throw await this.asError(response);
    }
    return (await response.json()) as ValidationReport;
  }

  async infer(evidence: EvidencePayload, signal?: AbortSignal): Promise<InferenceResult> {
    const response = await this.fetchFn(`${this.baseUrl}/infer`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(evidence),
      signal,
    });
    if (!response.ok) {
      throw await this.asError(response);
    }
    return (await response.json()) as InferenceResult;
  }

  async graph(): Promise<GraphView> {
    const response = await this.fetchFn(`${this.baseUrl}/graph`);
    if (!response.ok) {
      throw await this.asError(response);
    }
    return (await response.json()) as GraphView;
  }

  private async asError(response: Response): Promise<ServiceError> {
    try {
      const body = (await response.json()) as { code?: string; message?: string; path?: string };
      return new ServiceError(
        body.code ?? "HTTP_ERROR",
        body.message ?? `request failed with status ${response.status}`,
        response.status,
        body.path,
      );
    } catch {
      return new ServiceError("HTTP_ERROR", `request failed with status ${response.status}`,
        response.status);
    }
  }
}
