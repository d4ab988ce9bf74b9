import type { ApiClient } from '../src/api.js';
import type {
  DatasetInfo,
  FeaturesResponse,
  ProductsResponse,
  SummaryDocument,
  SummaryMode,
  SummaryResponse,
} from '../src/types.js';

export const FEATURES: FeaturesResponse = {
  price_feature: 'price',
  features: [
    { name: 'price', kind: 'numeric', domain: { min: 100, max: 600 } },
    { name: 'hdmi', kind: 'boolean', domain: [false, true] },
    { name: 'resolution', kind: 'categorical', domain: ['1080p', '4K', '720p'] },
  ],
};

export function documentFor(mode: SummaryMode): SummaryDocument {
  return {
    category: 'TVs',
    mode,
    curve: {
      total_count: 10,
      inlier_count: 9,
      inlier_lo: 100,
      inlier_hi: 600,
      median_rounded: 300,
      median_raw: 301.5,
      mad_raw: 80,
    },
    common:
      mode === 'baseline'
        ? []
        : [{ feature: 'hdmi', value: true, prevalence: 0.9, quantifier: 'most' }],
    impact:
      mode === 'baseline'
        ? []
        : [
            {
              feature: 'resolution',
              kind: 'categorical',
              modal_value: '1080p',
              prevalence: 0.5,
              impact_score: 120,
              groups: [],
              direction: null,
            },
            {
              feature: 'hdmi',
              kind: 'boolean',
              modal_value: true,
              prevalence: 0.9,
              impact_score: 60,
              groups: [],
              direction: null,
            },
          ],
  };
}

export function summaryTextFor(mode: SummaryMode, filter: string): string {
  const intro = `For TVs${filter ? ` (${filter})` : ''}, the price of most products (9 out of 10 models) falls in the range of 100-600 pounds with a median price of about 300 pounds.`;
  if (mode === 'baseline') return intro;
  const common = 'Most TVs have following features: hdmi.';
  const impact =
    'The features that have a strong impact on the price of TVs are: resolution and hdmi.';
  if (mode === 'full') return [intro, common, impact].join('\n\n');
  return [intro, common, impact, 'Most TVs in this category have hdmi.'].join('\n\n');
}

export function summaryFor(mode: SummaryMode, filter: string): SummaryResponse {
  return {
    dataset: 'ds1',
    mode,
    filter,
    product_count: filter ? 4 : 10,
    summary: summaryTextFor(mode, filter),
    document: documentFor(mode),
  };
}

export function productsFor(filter: string, page: number): ProductsResponse {
  const total = filter ? 4 : 10;
  return {
    products: Array.from({ length: total }, (_, i) => ({
      id: i,
      values: { price: 100 + i, hdmi: true, resolution: '1080p' },
    })),
    page,
    page_size: 25,
    total,
    category: filter ? `TVs (${filter})` : 'TVs',
  };
}

/** Deterministic stub: responses depend only on (mode, filter, page). */
export class StubApi implements ApiClient {
  calls = { datasets: 0, features: 0, summary: 0, products: 0 };

  async listDatasets(): Promise<DatasetInfo[]> {
    this.calls.datasets += 1;
    return [{ id: 'ds1', category: 'TVs', product_count: 10 }];
  }

  async fetchFeatures(): Promise<FeaturesResponse> {
    this.calls.features += 1;
    return FEATURES;
  }

  async fetchSummary(
    _datasetId: string,
    mode: SummaryMode,
    filter: string,
  ): Promise<SummaryResponse> {
    this.calls.summary += 1;
    return summaryFor(mode, filter);
  }

  async fetchProducts(
    _datasetId: string,
    filter: string,
    page: number,
  ): Promise<ProductsResponse> {
    this.calls.products += 1;
    return productsFor(filter, page);
  }
}

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (reason: unknown) => void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (reason: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

/** Stub whose summary responses resolve only when the test says so, for
 * simulating out-of-order completions. */
export class DeferredSummaryApi extends StubApi {
  pending: Array<{ filter: string; mode: SummaryMode; deferred: Deferred<SummaryResponse> }> =
    [];

  override fetchSummary(
    _datasetId: string,
    mode: SummaryMode,
    filter: string,
  ): Promise<SummaryResponse> {
    this.calls.summary += 1;
    const d = deferred<SummaryResponse>();
    this.pending.push({ filter, mode, deferred: d });
    return d.promise;
  }

  release(index: number): void {
    const entry = this.pending[index];
    if (!entry) throw new Error(`no pending summary request ${index}`);
    entry.deferred.resolve(summaryFor(entry.mode, entry.filter));
  }

  fail(index: number, message: string): void {
    const entry = this.pending[index];
    if (!entry) throw new Error(`no pending summary request ${index}`);
    entry.deferred.reject(new Error(message));
  }
}

export async function settled(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}
