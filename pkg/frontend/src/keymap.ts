/** The explorer's keyboard shortcut table and its key-event resolver. */

export type Action =
    | "play_title"
    | "play_x_axis"
    | "play_y_axis"
    | "play_summary"
    | "next_sentence"
    | "previous_sentence"
    | "repeat_sentence"
    | "enter_search"
    | "enter_voice_search"
    | "next_point"
    | "previous_point"
    | "series_up"
    | "series_down"
    | "select_point"
    | "speak_selection"
    | "reset"
    | "length_short"
    | "length_moderate"
    | "length_long"
    | "toggle_rate"
    | "next_chart"
    | "previous_chart";

export interface KeyStroke {
    key: string;
    shiftKey?: boolean;
}

export interface Binding {
    key: string;
    shift?: boolean;
    action: Action;
    description: string;
}

export const KEY_BINDINGS: Binding[] = [
    { key: "Enter", action: "play_title", description: "Plays the chart title along with chart type." },
    { key: "x", action: "play_x_axis", description: "Plays the X and Y axis labels." },
    { key: "y", action: "play_y_axis", description: "Plays the X and Y axis labels." },
    { key: " ", action: "play_summary", description: "Plays the chart description." },
    { key: "j", action: "next_sentence", description: "Plays the next sentence." },
    { key: "l", action: "previous_sentence", description: "Plays the previous sentence." },
    { key: "k", action: "repeat_sentence", description: "Plays the currently selected sentence again." },
    { key: "f", action: "enter_search", description: "Activate search mode." },
    { key: "q", action: "enter_voice_search", description: "Activate voice search mode." },
    { key: "ArrowRight", action: "next_point", description: "Navigate through the data points." },
    { key: "ArrowLeft", action: "previous_point", description: "Navigate through the data points." },
    { key: "ArrowUp", action: "series_up", description: "Switch between lines in a multi line chart." },
    { key: "ArrowDown", action: "series_down", description: "Switch between lines in a multi line chart." },
    { key: "ArrowRight", shift: true, action: "select_point", description: "Select multiple points for a partial description." },
    { key: "s", action: "speak_selection", description: "Hear the list of selected points." },
    { key: "Escape", action: "reset", description: "Reset the selected points." },
    { key: "1", action: "length_short", description: "Change the description length to short." },
    { key: "2", action: "length_moderate", description: "Change the description length to moderate." },
    { key: "3", action: "length_long", description: "Change the description length to long." },
    { key: "t", action: "toggle_rate", description: "Toggle audio speed." },
    { key: "n", action: "next_chart", description: "Move to the next chart on the page." },
    { key: "p", action: "previous_chart", description: "Move to the previous chart on the page." },
];

/** Resolve a key event to its bound action; unbound keys map to null. */
export function actionFor(stroke: KeyStroke): Action | null {
    const key = stroke.key.length === 1 ? stroke.key.toLowerCase() : stroke.key;
    for (const binding of KEY_BINDINGS) {
        if (binding.key !== key) continue;
        if ((binding.shift ?? false) !== (stroke.shiftKey ?? false) && binding.key.startsWith("Arrow")) continue;
        return binding.action;
    }
    return null;
}
