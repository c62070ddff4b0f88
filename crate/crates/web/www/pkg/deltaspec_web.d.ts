/* tslint:disable */
/* eslint-disable */

/**
 * `|μ̂_C(t)|` and `|μ̂_N(t) − μ̂_C(t)|` at each `t`, interleaved.
 */
export function cantorFourier(level: number, ts: Float64Array): Float64Array;

/**
 * Certified window for the square-well ground state from the discretization
 * at `n`: `[E, lo, hi, isolation_lo, isolation_hi, s, delta]`.
 */
export function certifySquareWell(n: number): Float64Array;

/**
 * Eigenfunction of the `index`-th eigenvalue sampled at `xs`, peak scaled to one.
 */
export function chainEigenfunction(positions: Float64Array, weights: Float64Array, index: number, xs: Float64Array): Float64Array;

/**
 * Negative eigenvalues (ascending) of the chain with atoms `(positions[j], weights[j])`.
 */
export function chainEigenvalues(positions: Float64Array, weights: Float64Array): Float64Array;

/**
 * Atoms of the square-well discretization at `n`, interleaved `x, weight`.
 */
export function squareWellAtoms(n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly cantorFourier: (a: number, b: number, c: number) => [number, number, number, number];
    readonly certifySquareWell: (a: number) => [number, number, number, number];
    readonly chainEigenfunction: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly chainEigenvalues: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly squareWellAtoms: (a: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
