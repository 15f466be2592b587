import {
    AnswerResponse,
    ChartJson,
    ChartService,
    DeconstructResponse,
    LengthLevel,
    PointResponse,
    RegisterResponse,
    SummaryResponse,
} from "./types.js";

export class ServiceError extends Error {
    constructor(public status: number, message: string) {
        super(message);
    }
}

/** Thin fetch wrapper around the chart service REST API. */
export class HttpChartService implements ChartService {
    constructor(private baseUrl: string, private sessionId: string = "explorer") {}

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const response = await fetch(this.baseUrl + path, {
            method,
            headers: {
                "Content-Type": "application/json",
                "X-Session-Id": this.sessionId,
            },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (!response.ok) {
            const detail = await response.text();
            throw new ServiceError(response.status, `${method} ${path}: ${detail}`);
        }
        return (await response.json()) as T;
    }

    deconstructSvg(svg: string): Promise<DeconstructResponse> {
        return this.request("POST", "/v1/deconstruct", { svg });
    }

    registerChart(chart: ChartJson): Promise<RegisterResponse> {
        return this.request("POST", "/v1/charts", { chart });
    }

    title(chartId: string): Promise<{ text: string }> {
        return this.request("GET", `/v1/charts/${chartId}/title`);
    }

    summary(chartId: string, level: LengthLevel, seed?: number): Promise<SummaryResponse> {
        const params = new URLSearchParams({ level });
        if (seed !== undefined) params.set("seed", String(seed));
        return this.request("GET", `/v1/charts/${chartId}/summary?${params}`);
    }

    point(chartId: string, series: number, index: number): Promise<PointResponse> {
        return this.request("GET", `/v1/charts/${chartId}/point?series=${series}&index=${index}`);
    }

    selectionSummarize(chartId: string, indices: number[], level: LengthLevel): Promise<SummaryResponse> {
        return this.request("POST", `/v1/charts/${chartId}/selection/summarize`, { indices, level });
    }

    selectionDescribe(chartId: string, indices: number[]): Promise<{ text: string }> {
        return this.request("POST", `/v1/charts/${chartId}/selection/describe`, { indices });
    }

    answer(chartId: string, query: string): Promise<AnswerResponse> {
        return this.request("POST", `/v1/charts/${chartId}/answer`, { query });
    }
}
