import type {
  DatasetInfo,
  FeaturesResponse,
  ProductsResponse,
  SummaryMode,
  SummaryResponse,
} from './types.js';

/** What the store needs from the backend; tests substitute a stub. */
export interface ApiClient {
  listDatasets(): Promise<DatasetInfo[]>;
  fetchFeatures(datasetId: string): Promise<FeaturesResponse>;
  fetchSummary(datasetId: string, mode: SummaryMode, filter: string): Promise<SummaryResponse>;
  fetchProducts(
    datasetId: string,
    filter: string,
    page: number,
    pageSize: number,
  ): Promise<ProductsResponse>;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class HttpApiClient implements ApiClient {
  constructor(private baseUrl: string = '') {}

  listDatasets(): Promise<DatasetInfo[]> {
    return getJson<{ datasets: DatasetInfo[] }>(`${this.baseUrl}/datasets`).then(
      (r) => r.datasets,
    );
  }

  fetchFeatures(datasetId: string): Promise<FeaturesResponse> {
    return getJson(`${this.baseUrl}/datasets/${encodeURIComponent(datasetId)}/features`);
  }

  fetchSummary(datasetId: string, mode: SummaryMode, filter: string): Promise<SummaryResponse> {
    const params = new URLSearchParams({ mode });
    if (filter) params.set('filter', filter);
    return getJson(
      `${this.baseUrl}/datasets/${encodeURIComponent(datasetId)}/summary?${params}`,
    );
  }

  fetchProducts(
    datasetId: string,
    filter: string,
    page: number,
    pageSize: number,
  ): Promise<ProductsResponse> {
    const params = new URLSearchParams({ page: String(page), page_size: String(pageSize) });
    if (filter) params.set('filter', filter);
    return getJson(
      `${this.baseUrl}/datasets/${encodeURIComponent(datasetId)}/products?${params}`,
    );
  }
}
