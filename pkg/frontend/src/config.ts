/** Single JSON config for the explorer shell. */

export interface AppConfig {
    serviceBaseUrl: string;
    ratePresets: number[];
    chimeEnabled: boolean;
}

export const DEFAULT_CONFIG: AppConfig = {
    serviceBaseUrl: "http://127.0.0.1:8040",
    ratePresets: [1.0, 1.5, 2.0],
    chimeEnabled: true,
};

export async function loadConfig(url = "./config.json"): Promise<AppConfig> {
    try {
        const response = await fetch(url);
        if (!response.ok) return DEFAULT_CONFIG;
        return { ...DEFAULT_CONFIG, ...(await response.json()) };
    } catch {
        return DEFAULT_CONFIG;
    }
}
