/** Fixed positional and mode cues. Everything else the explorer speaks comes
 *  from a service response; cues deliberately contain no digits so chart
 *  numbers can only originate from the service. */

export const CUES = {
    beginning: "You are at the beginning of the chart",
    lastPoint: "This is the last point of the graph",
    topmostLine: "This is the topmost line",
    bottommostLine: "This is the bottommost line",
    noChart: "No chart is loaded.",
    searchMode: "Search mode. Type your question and press Enter.",
    voiceSearchMode: "Voice search mode. Speak your question.",
    voiceUnavailable: "Voice search is not available here.",
    searchClosed: "Search closed.",
    selectionCleared: "Selection cleared.",
    nothingSelected: "No points are selected.",
    noSummaryYet: "No summary has been played yet. Press Space first.",
    lengthShort: "Summary length set to short.",
    lengthModerate: "Summary length set to moderate.",
    lengthLong: "Summary length set to long.",
} as const;

/** Spoken names for the cycling voice rates; index-aligned with the presets. */
export const RATE_NAMES = ["Normal speed", "Faster speed", "Fastest speed"] as const;
