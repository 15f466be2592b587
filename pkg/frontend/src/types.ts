/** Wire types for the chart service. */

export interface ChartJson {
    chartType: string;
    title: string;
    xAxis: { label: string; dataType: string };
    yAxis: { label: string; dataType: string };
    series: { name: string | null; points: { x: string; y: number }[] }[];
}

export interface RegisterResponse {
    id: string;
    seed: number;
    hash: string;
}

export interface SummaryResponse {
    level: string;
    seed: number;
    sentences: string[];
    text: string;
}

export interface PointResponse {
    text: string;
    series: number;
    index: number;
    category: string;
    value: number;
    series_name: string | null;
}

export interface AnswerResponse {
    intent: string;
    spoken_text: string;
    payload: Record<string, unknown>;
}

export interface DeconstructResponse {
    chart: ChartJson;
    warnings: string[];
}

export type LengthLevel = "short" | "moderate" | "long";

/** Everything the explorer asks the service for. Spoken chart facts only ever
 *  come out of these responses. */
export interface ChartService {
    deconstructSvg(svg: string): Promise<DeconstructResponse>;
    registerChart(chart: ChartJson): Promise<RegisterResponse>;
    title(chartId: string): Promise<{ text: string }>;
    summary(chartId: string, level: LengthLevel, seed?: number): Promise<SummaryResponse>;
    point(chartId: string, series: number, index: number): Promise<PointResponse>;
    selectionSummarize(chartId: string, indices: number[], level: LengthLevel): Promise<SummaryResponse>;
    selectionDescribe(chartId: string, indices: number[]): Promise<{ text: string }>;
    answer(chartId: string, query: string): Promise<AnswerResponse>;
}
