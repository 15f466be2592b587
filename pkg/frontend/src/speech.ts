/** Speech output abstraction. The explorer only talks through this interface,
 *  which keeps tests deterministic and lets the app fall back to a visible
 *  live region when the host has no speech synthesis. */

export interface SpeechSink {
    speak(text: string): void;
    cancel(): void;
    setRate(rate: number): void;
}

export class BrowserSpeech implements SpeechSink {
    private rate = 1.0;

    constructor(private fallback?: (text: string) => void) {}

    get available(): boolean {
        return typeof window !== "undefined" && "speechSynthesis" in window;
    }

    speak(text: string): void {
        if (!this.available) {
            this.fallback?.(text);
            return;
        }
        const utterance = new SpeechSynthesisUtterance(text);
        utterance.rate = this.rate;
        window.speechSynthesis.speak(utterance);
        this.fallback?.(text);
    }

    cancel(): void {
        if (this.available) window.speechSynthesis.cancel();
    }

    setRate(rate: number): void {
        this.rate = rate;
    }
}

/** Host speech recognition behind a promise; resolves to the transcript. */
export type Recognizer = () => Promise<string>;

export function browserRecognizer(): Recognizer | undefined {
    const w = globalThis as Record<string, any>;
    const Recognition = w.SpeechRecognition ?? w.webkitSpeechRecognition;
    if (!Recognition) return undefined;
    return () =>
        new Promise<string>((resolve, reject) => {
            const recognition = new Recognition();
            recognition.lang = "en-US";
            recognition.onresult = (event: any) => resolve(event.results[0][0].transcript);
            recognition.onerror = (event: any) => reject(new Error(event.error));
            recognition.start();
        });
}
