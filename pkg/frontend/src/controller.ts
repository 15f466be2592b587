/** Keyboard-driven explorer core: one state machine, no DOM.
 *
 *  Every chart fact it speaks comes from a service response; the only other
 *  utterances are the fixed cues. Navigation utterances cancel whatever is
 *  in flight. While search mode is active all other shortcuts are
 *  suppressed until Enter submits or Escape leaves.
 */

import { CUES, RATE_NAMES } from "./cues.js";
import { Action, actionFor, KeyStroke } from "./keymap.js";
import { Recognizer, SpeechSink } from "./speech.js";
import { ChartJson, ChartService, LengthLevel } from "./types.js";

export interface ChartHandle {
    id: string;
    seed: number;
    seriesCount: number;
    pointCount: number;
}

export interface ControllerDeps {
    service: ChartService;
    speech: SpeechSink;
    chime: () => void;
    recognizer?: Recognizer;
    rates?: number[];
}

const DEFAULT_RATES = [1.0, 1.5, 2.0];

export type HandleResult = Action | "suppressed" | "search_input" | "search_submit" | "search_exit" | "selection_summarized" | null;

export class ExplorerController {
    charts: ChartHandle[] = [];
    active = -1;
    cursor = { series: 0, point: -1 };
    selection: number[] = [];
    selectionMode = false;
    sentences: string[] = [];
    sentenceIndex = -1;
    level: LengthLevel = "moderate";
    rateIndex = 0;
    searchMode: "off" | "text" | "voice" = "off";
    searchBuffer = "";

    private rates: number[];

    constructor(private deps: ControllerDeps) {
        this.rates = deps.rates ?? DEFAULT_RATES;
    }

    activeChart(): ChartHandle | null {
        return this.active >= 0 ? this.charts[this.active] : null;
    }

    /** Register a freshly deconstructed chart and play the found-a-chart chime. */
    async loadChart(chart: ChartJson): Promise<ChartHandle> {
        const registered = await this.deps.service.registerChart(chart);
        const handle: ChartHandle = {
            id: registered.id,
            seed: registered.seed,
            seriesCount: chart.series.length,
            pointCount: chart.series[0]?.points.length ?? 0,
        };
        this.charts.push(handle);
        if (this.active < 0) this.active = 0;
        this.deps.chime();
        return handle;
    }

    async handleKey(stroke: KeyStroke): Promise<HandleResult> {
        if (this.searchMode !== "off") return this.handleSearchKey(stroke);
        const action = actionFor(stroke);
        if (action === null) return null;
        await this.dispatch(action);
        return action;
    }

    /** Releasing Shift after selecting plays the partial summary immediately. */
    async handleKeyUp(stroke: KeyStroke): Promise<HandleResult> {
        if (stroke.key !== "Shift" || !this.selectionMode) return null;
        this.selectionMode = false;
        const chart = this.activeChart();
        if (!chart || this.selection.length === 0) return null;
        const summary = await this.deps.service.selectionSummarize(chart.id, this.selection, this.level);
        this.sentences = summary.sentences;
        this.sentenceIndex = 0;
        this.speakAll([summary.text]);
        return "selection_summarized";
    }

    private speakAll(texts: string[]): void {
        this.deps.speech.cancel();
        for (const text of texts) this.deps.speech.speak(text);
    }

    private async dispatch(action: Action): Promise<void> {
        const chart = this.activeChart();
        if (!chart && action !== "toggle_rate") {
            this.speakAll([CUES.noChart]);
            return;
        }

        switch (action) {
            case "play_title": {
                const title = await this.deps.service.title(chart!.id);
                this.speakAll([title.text]);
                return;
            }
            case "play_x_axis":
            case "play_y_axis": {
                const query = action === "play_x_axis" ? "x axis" : "y axis";
                const answer = await this.deps.service.answer(chart!.id, query);
                this.speakAll([answer.spoken_text]);
                return;
            }
            case "play_summary": {
                const summary = await this.deps.service.summary(chart!.id, this.level, chart!.seed);
                this.sentences = summary.sentences;
                this.sentenceIndex = 0;
                this.speakAll([summary.text]);
                return;
            }
            case "next_sentence":
            case "previous_sentence":
            case "repeat_sentence": {
                await this.playSentence(action, chart!);
                return;
            }
            case "enter_search": {
                this.searchMode = "text";
                this.searchBuffer = "";
                this.speakAll([CUES.searchMode]);
                return;
            }
            case "enter_voice_search": {
                if (!this.deps.recognizer) {
                    this.speakAll([CUES.voiceUnavailable]);
                    return;
                }
                this.searchMode = "voice";
                this.speakAll([CUES.voiceSearchMode]);
                const transcript = await this.deps.recognizer();
                this.searchMode = "off";
                const answer = await this.deps.service.answer(chart!.id, transcript);
                this.speakAll([answer.spoken_text]);
                return;
            }
            case "next_point": {
                const target = this.cursor.point >= chart!.pointCount - 1 ? 0 : this.cursor.point + 1;
                await this.moveToPoint(chart!, target);
                return;
            }
            case "previous_point": {
                const target = this.cursor.point <= 0 ? chart!.pointCount - 1 : this.cursor.point - 1;
                await this.moveToPoint(chart!, target);
                return;
            }
            case "series_up":
            case "series_down": {
                if (chart!.seriesCount < 2) return; // nothing to switch on single-series charts
                const delta = action === "series_up" ? -1 : 1;
                this.cursor.series = Math.min(Math.max(this.cursor.series + delta, 0), chart!.seriesCount - 1);
                const texts: string[] = [];
                if (this.cursor.series === 0) texts.push(CUES.topmostLine);
                if (this.cursor.series === chart!.seriesCount - 1) texts.push(CUES.bottommostLine);
                if (this.cursor.point >= 0) {
                    const point = await this.deps.service.point(chart!.id, this.cursor.series, this.cursor.point);
                    texts.push(point.text);
                }
                this.speakAll(texts);
                return;
            }
            case "select_point": {
                this.selectionMode = true;
                const target = Math.min(this.cursor.point + 1, chart!.pointCount - 1);
                this.cursor.point = target;
                if (!this.selection.includes(target)) {
                    this.selection.push(target);
                    this.selection.sort((a, b) => a - b);
                }
                const described = await this.deps.service.selectionDescribe(chart!.id, [target]);
                this.speakAll([described.text]);
                return;
            }
            case "speak_selection": {
                if (this.selection.length === 0) {
                    this.speakAll([CUES.nothingSelected]);
                    return;
                }
                const described = await this.deps.service.selectionDescribe(chart!.id, this.selection);
                this.speakAll([described.text]);
                return;
            }
            case "reset": {
                this.selection = [];
                this.selectionMode = false;
                this.speakAll([CUES.selectionCleared]);
                return;
            }
            case "length_short":
            case "length_moderate":
            case "length_long": {
                this.level = action === "length_short" ? "short" : action === "length_moderate" ? "moderate" : "long";
                const cue =
                    this.level === "short" ? CUES.lengthShort : this.level === "moderate" ? CUES.lengthModerate : CUES.lengthLong;
                this.speakAll([cue]);
                return;
            }
            case "toggle_rate": {
                this.rateIndex = (this.rateIndex + 1) % this.rates.length;
                this.deps.speech.setRate(this.rates[this.rateIndex]);
                this.speakAll([RATE_NAMES[this.rateIndex % RATE_NAMES.length]]);
                return;
            }
            case "next_chart":
            case "previous_chart": {
                const count = this.charts.length;
                if (count === 0) return;
                const delta = action === "next_chart" ? 1 : -1;
                this.active = (this.active + delta + count) % count;
                this.resetChartState();
                const title = await this.deps.service.title(this.activeChart()!.id);
                this.speakAll([title.text]);
                return;
            }
        }
    }

    private resetChartState(): void {
        this.cursor = { series: 0, point: -1 };
        this.selection = [];
        this.selectionMode = false;
        this.sentences = [];
        this.sentenceIndex = -1;
    }

    private async moveToPoint(chart: ChartHandle, target: number): Promise<void> {
        this.cursor.point = target;
        const point = await this.deps.service.point(chart.id, this.cursor.series, target);
        const texts = [point.text];
        if (target === chart.pointCount - 1) texts.push(CUES.lastPoint);
        if (target === 0) texts.push(CUES.beginning);
        this.speakAll(texts);
    }

    private async playSentence(action: Action, chart: ChartHandle): Promise<void> {
        if (this.sentences.length === 0) {
            if (action === "repeat_sentence") {
                this.speakAll([CUES.noSummaryYet]);
                return;
            }
            const summary = await this.deps.service.summary(chart.id, this.level, chart.seed);
            this.sentences = summary.sentences;
            this.sentenceIndex = 0;
        } else if (action === "next_sentence") {
            this.sentenceIndex = Math.min(this.sentenceIndex + 1, this.sentences.length - 1);
        } else if (action === "previous_sentence") {
            this.sentenceIndex = Math.max(this.sentenceIndex - 1, 0);
        }
        this.speakAll([this.sentences[this.sentenceIndex]]);
    }

    private async handleSearchKey(stroke: KeyStroke): Promise<HandleResult> {
        if (stroke.key === "Escape") {
            this.searchMode = "off";
            this.searchBuffer = "";
            this.speakAll([CUES.searchClosed]);
            return "search_exit";
        }
        if (stroke.key === "Enter") {
            const chart = this.activeChart();
            const queryText = this.searchBuffer.trim();
            this.searchMode = "off";
            this.searchBuffer = "";
            if (chart && queryText) {
                const answer = await this.deps.service.answer(chart.id, queryText);
                this.speakAll([answer.spoken_text]);
            }
            return "search_submit";
        }
        if (stroke.key === "Backspace") {
            this.searchBuffer = this.searchBuffer.slice(0, -1);
            return "search_input";
        }
        if (stroke.key.length === 1) {
            this.searchBuffer += stroke.key;
            return "search_input";
        }
        return "suppressed";
    }
}
