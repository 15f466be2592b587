/** Short non-speech chime announcing that a chart was found. Volume-limited
 *  and brief so it never talks over an in-flight narration. */

export type Chime = () => void;

export function browserChime(enabled = true): Chime {
    return () => {
        if (!enabled) return;
        const w = globalThis as Record<string, any>;
        const Ctx = w.AudioContext ?? w.webkitAudioContext;
        if (!Ctx) return;
        const ctx = new Ctx();
        const oscillator = ctx.createOscillator();
        const gain = ctx.createGain();
        oscillator.type = "sine";
        oscillator.frequency.value = 880;
        gain.gain.setValueAtTime(0.12, ctx.currentTime);
        gain.gain.exponentialRampToValueAtTime(0.0001, ctx.currentTime + 0.35);
        oscillator.connect(gain).connect(ctx.destination);
        oscillator.start();
        oscillator.stop(ctx.currentTime + 0.35);
    };
}
