// Typed client for the four recommendation endpoints. The wizard never
// computes anything problem-related itself; everything comes from here.

export interface ProblemClassInfo {
  id: string;
  name: string;
  description: string;
}

export interface ParamInfo {
  name: string;
  kind: "positive-integer" | "distance-matrix";
  required: boolean;
  min?: number;
}

export interface ProblemInfo {
  id: string;
  classId: string;
  name: string;
  description: string;
  params: ParamInfo[];
}

export interface RankedSolverInfo {
  rank: number;
  id: string;
  name: string;
  kind: "qpu" | "hybrid";
  topology?: string;
  maxQubits: number;
  maxVariables: number;
  solutionQuality?: number;
}

export interface RecommendResponse {
  numVar: number;
  numQubits: Record<string, number>;
  sortMode: "benchmarked" | "default";
  noCandidates: boolean;
  rankedSolvers: RankedSolverInfo[];
}

export interface PriceInfo {
  priceRef: string;
  amount: number;
  currency: string;
  unit: string;
  fetchedAt?: string;
}

export interface ProblemDetail {
  title: string;
  status: number;
  detail: string;
  stalePrice?: PriceInfo;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly problem: ProblemDetail | null,
  ) {
    super(problem ? problem.detail : `request failed with status ${status}`);
    this.name = "ApiError";
  }
}

declare const __API_BASE__: string;

export function buildTimeApiBase(): string {
  return typeof __API_BASE__ === "undefined" ? "" : __API_BASE__;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) =>
      globalThis.fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let problem: ProblemDetail | null = null;
      try {
        problem = (await response.json()) as ProblemDetail;
      } catch {
        // non-JSON error body; keep the status only
      }
      throw new ApiError(response.status, problem);
    }
    return (await response.json()) as T;
  }

  listClasses(): Promise<ProblemClassInfo[]> {
    return this.request<ProblemClassInfo[]>("/api/classes");
  }

  listProblems(classId: string): Promise<ProblemInfo[]> {
    return this.request<ProblemInfo[]>(
      `/api/classes/${encodeURIComponent(classId)}/problems`,
    );
  }

  recommend(
    problemId: string,
    params: Record<string, unknown>,
    signal?: AbortSignal,
  ): Promise<RecommendResponse> {
    return this.request<RecommendResponse>("/api/recommend", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ problemId, params }),
      signal,
    });
  }

  price(solverId: string): Promise<PriceInfo> {
    return this.request<PriceInfo>(
      `/api/solvers/${encodeURIComponent(solverId)}/price`,
    );
  }
}
