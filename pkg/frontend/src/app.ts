/** Browser shell: wires the controller to the DOM, speech, and the service.
 *  Everything interactive is keyboard-reachable; spoken text mirrors into an
 *  aria-live region so the explorer stays usable without synthesis. */

import { HttpChartService } from "./api.js";
import { browserChime } from "./chime.js";
import { loadConfig } from "./config.js";
import { ExplorerController } from "./controller.js";
import { KEY_BINDINGS } from "./keymap.js";
import { BrowserSpeech, browserRecognizer } from "./speech.js";

export async function startApp(root: HTMLElement): Promise<ExplorerController> {
    const config = await loadConfig();
    const service = new HttpChartService(config.serviceBaseUrl);

    const live = document.createElement("div");
    live.setAttribute("aria-live", "assertive");
    live.setAttribute("role", "status");
    live.className = "live-region";
    root.appendChild(live);

    const speech = new BrowserSpeech((text) => {
        live.textContent = text;
    });

    const controller = new ExplorerController({
        service,
        speech,
        chime: browserChime(config.chimeEnabled),
        recognizer: browserRecognizer(),
        rates: config.ratePresets,
    });

    const picker = document.createElement("input");
    picker.type = "file";
    picker.accept = ".svg,.json";
    picker.setAttribute("aria-label", "Open a chart file (SVG or chart JSON)");
    picker.addEventListener("change", async () => {
        const file = picker.files?.[0];
        if (!file) return;
        const text = await file.text();
        const chart = text.trimStart().startsWith("<")
            ? (await service.deconstructSvg(text)).chart
            : JSON.parse(text);
        await controller.loadChart(chart);
        live.textContent = "Chart loaded. Press Enter for the title, Space for the summary.";
    });
    root.appendChild(picker);

    const help = document.createElement("details");
    const summary = document.createElement("summary");
    summary.textContent = "Keyboard shortcuts";
    help.appendChild(summary);
    const list = document.createElement("ul");
    for (const binding of KEY_BINDINGS) {
        const item = document.createElement("li");
        const key = binding.key === " " ? "Space" : binding.key;
        item.textContent = `${binding.shift ? "Shift + " : ""}${key}: ${binding.description}`;
        list.appendChild(item);
    }
    help.appendChild(list);
    root.appendChild(help);

    document.addEventListener("keydown", (event) => {
        if (event.target === picker) return;
        void controller.handleKey({ key: event.key, shiftKey: event.shiftKey }).then((handled) => {
            if (handled) event.preventDefault();
        });
    });
    document.addEventListener("keyup", (event) => {
        void controller.handleKeyUp({ key: event.key });
    });

    return controller;
}
