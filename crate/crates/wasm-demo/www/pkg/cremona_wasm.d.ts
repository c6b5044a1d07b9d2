/* tslint:disable */
/* eslint-disable */

export function familyMap(name: string, n: number, d: number): string;

/**
 * Reduces, checks and inverts a log-matrix given as text.
 */
export function inspectMatrix(text: string): string;

/**
 * Inverse-degree histogram of all degree-`d` maps on P^n.
 */
export function inverseDegreeHistogram(n: number, d: number): string;

/**
 * Occupancy of `(d, d')` pairs along a seeded GL_n(Z) walk.
 */
export function walkOccupancy(n: number, steps: number, seed: number, d_max: number, max_multiple: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly familyMap: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly inspectMatrix: (a: number, b: number) => [number, number, number, number];
    readonly inverseDegreeHistogram: (a: number, b: number) => [number, number, number, number];
    readonly walkOccupancy: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
