export class FilterOutcome {
    static __wrap(ptr) {
        const obj = Object.create(FilterOutcome.prototype);
        obj.__wbg_ptr = ptr;
        FilterOutcomeFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        FilterOutcomeFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_filteroutcome_free(ptr, 0);
    }
    /**
     * Interleaved `r, g, b` per point.
     * @returns {Uint8Array}
     */
    colors() {
        const ret = wasm.filteroutcome_colors(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
    /**
     * @returns {number}
     */
    get clusters() {
        const ret = wasm.__wbg_get_filteroutcome_clusters(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get f1() {
        const ret = wasm.__wbg_get_filteroutcome_f1(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get kept() {
        const ret = wasm.__wbg_get_filteroutcome_kept(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get outliers() {
        const ret = wasm.__wbg_get_filteroutcome_outliers(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get precision() {
        const ret = wasm.__wbg_get_filteroutcome_precision(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get recall() {
        const ret = wasm.__wbg_get_filteroutcome_recall(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set clusters(arg0) {
        wasm.__wbg_set_filteroutcome_clusters(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set f1(arg0) {
        wasm.__wbg_set_filteroutcome_f1(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set kept(arg0) {
        wasm.__wbg_set_filteroutcome_kept(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set outliers(arg0) {
        wasm.__wbg_set_filteroutcome_outliers(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set precision(arg0) {
        wasm.__wbg_set_filteroutcome_precision(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set recall(arg0) {
        wasm.__wbg_set_filteroutcome_recall(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) FilterOutcome.prototype[Symbol.dispose] = FilterOutcome.prototype.free;

export class Scene {
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SceneFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_scene_free(ptr, 0);
    }
    /**
     * Runs `dmnr` or `dmnr-h` and returns colors plus scores against the
     * scene's ground truth.
     * @param {string} algo
     * @param {Settings} settings
     * @returns {FilterOutcome}
     */
    filter(algo, settings) {
        const ptr0 = passStringToWasm0(algo, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
        const len0 = WASM_VECTOR_LEN;
        _assertClass(settings, Settings);
        const ret = wasm.scene_filter(this.__wbg_ptr, ptr0, len0, settings.__wbg_ptr);
        if (ret[2]) {
            throw takeFromExternrefTable0(ret[1]);
        }
        return FilterOutcome.__wrap(ret[0]);
    }
    /**
     * @returns {boolean}
     */
    is_empty() {
        const ret = wasm.scene_is_empty(this.__wbg_ptr);
        return ret !== 0;
    }
    /**
     * @returns {number}
     */
    len() {
        const ret = wasm.scene_len(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @param {number} points
     * @param {bigint} seed
     * @param {number} clutter_fraction
     * @param {boolean} bright_clutter
     */
    constructor(points, seed, clutter_fraction, bright_clutter) {
        const ret = wasm.scene_new(points, seed, clutter_fraction, bright_clutter);
        if (ret[2]) {
            throw takeFromExternrefTable0(ret[1]);
        }
        this.__wbg_ptr = ret[0];
        SceneFinalization.register(this, this.__wbg_ptr, this);
        return this;
    }
    /**
     * Interleaved `x, y, z` per point.
     * @returns {Float32Array}
     */
    positions() {
        const ret = wasm.scene_positions(this.__wbg_ptr);
        var v1 = getArrayF32FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 4, 4);
        return v1;
    }
    /**
     * Samples `H(d)` and `T(d)` at `samples` ranges in `(0, max_range]` for a
     * point of the given intensity. Layout: `[d..., H..., T...]`.
     * @param {Settings} settings
     * @param {number} intensity
     * @param {number} max_range
     * @param {number} samples
     * @returns {Float64Array}
     */
    threshold_curves(settings, intensity, max_range, samples) {
        _assertClass(settings, Settings);
        const ret = wasm.scene_threshold_curves(this.__wbg_ptr, settings.__wbg_ptr, intensity, max_range, samples);
        if (ret[3]) {
            throw takeFromExternrefTable0(ret[2]);
        }
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * One byte per point, 1 for clutter.
     * @returns {Uint8Array}
     */
    truth() {
        const ret = wasm.scene_truth(this.__wbg_ptr);
        var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
        return v1;
    }
}
if (Symbol.dispose) Scene.prototype[Symbol.dispose] = Scene.prototype.free;

export class Settings {
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SettingsFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_settings_free(ptr, 0);
    }
    /**
     * @returns {boolean}
     */
    get fixed_height() {
        const ret = wasm.__wbg_get_settings_fixed_height(this.__wbg_ptr);
        return ret !== 0;
    }
    /**
     * @returns {number}
     */
    get h() {
        const ret = wasm.__wbg_get_settings_h(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get k1() {
        const ret = wasm.__wbg_get_settings_k1(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get k2() {
        const ret = wasm.__wbg_get_settings_k2(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get k3() {
        const ret = wasm.__wbg_get_settings_k3(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get k() {
        const ret = wasm.__wbg_get_settings_k(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    get min_cluster_size() {
        const ret = wasm.__wbg_get_settings_min_cluster_size(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @param {boolean} arg0
     */
    set fixed_height(arg0) {
        wasm.__wbg_set_settings_fixed_height(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set h(arg0) {
        wasm.__wbg_set_settings_h(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set k1(arg0) {
        wasm.__wbg_set_settings_k1(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set k2(arg0) {
        wasm.__wbg_set_settings_k2(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set k3(arg0) {
        wasm.__wbg_set_settings_k3(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set k(arg0) {
        wasm.__wbg_set_settings_k(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set min_cluster_size(arg0) {
        wasm.__wbg_set_settings_min_cluster_size(this.__wbg_ptr, arg0);
    }
    constructor() {
        const ret = wasm.settings_new();
        this.__wbg_ptr = ret;
        SettingsFinalization.register(this, this.__wbg_ptr, this);
        return this;
    }
}
if (Symbol.dispose) Settings.prototype[Symbol.dispose] = Settings.prototype.free;
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_generic_0000000000000001: function(arg0, arg1) {
            // Cast intrinsic for `Ref(String) -> Externref`.
            const ret = getStringFromWasm0(arg0, arg1);
            return ret;
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./dmnr_demo_bg.js": import0,
    };
}

const FilterOutcomeFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_filteroutcome_free(ptr, 1));
const SceneFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_scene_free(ptr, 1));
const SettingsFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_settings_free(ptr, 1));

function _assertClass(instance, klass) {
    if (!(instance instanceof klass)) {
        throw new Error(`expected instance of ${klass.name}`);
    }
}

function getArrayF32FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat32ArrayMemory0().subarray(ptr / 4, ptr / 4 + len);
}

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat32ArrayMemory0 = null;
function getFloat32ArrayMemory0() {
    if (cachedFloat32ArrayMemory0 === null || cachedFloat32ArrayMemory0.byteLength === 0) {
        cachedFloat32ArrayMemory0 = new Float32Array(wasm.memory.buffer);
    }
    return cachedFloat32ArrayMemory0;
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passStringToWasm0(arg, malloc, realloc) {
    if (realloc === undefined) {
        const buf = cachedTextEncoder.encode(arg);
        const ptr = malloc(buf.length, 1) >>> 0;
        getUint8ArrayMemory0().subarray(ptr, ptr + buf.length).set(buf);
        WASM_VECTOR_LEN = buf.length;
        return ptr;
    }

    let len = arg.length;
    let ptr = malloc(len, 1) >>> 0;

    const mem = getUint8ArrayMemory0();

    let offset = 0;

    for (; offset < len; offset++) {
        const code = arg.charCodeAt(offset);
        if (code > 0x7F) break;
        mem[ptr + offset] = code;
    }
    if (offset !== len) {
        if (offset !== 0) {
            arg = arg.slice(offset);
        }
        ptr = realloc(ptr, len, len = offset + arg.length * 3, 1) >>> 0;
        const view = getUint8ArrayMemory0().subarray(ptr + offset, ptr + len);
        const ret = cachedTextEncoder.encodeInto(arg, view);

        offset += ret.written;
        ptr = realloc(ptr, len, offset, 1) >>> 0;
    }

    WASM_VECTOR_LEN = offset;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

const cachedTextEncoder = new TextEncoder();

if (!('encodeInto' in cachedTextEncoder)) {
    cachedTextEncoder.encodeInto = function (arg, view) {
        const buf = cachedTextEncoder.encode(arg);
        view.set(buf);
        return {
            read: arg.length,
            written: buf.length
        };
    };
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat32ArrayMemory0 = null;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('dmnr_demo_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
