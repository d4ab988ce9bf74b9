import type { ApiClient } from './api.js';
import type {
  FeatureInfo,
  FilterTerm,
  ProductsResponse,
  SummaryMode,
  SummaryResponse,
} from './types.js';
import { termsToQuery } from './types.js';

export interface ExplorerState {
  datasetId: string | null;
  filters: FilterTerm[];
  mode: SummaryMode;
  page: number;
  features: FeatureInfo[];
  summary: SummaryResponse | null;
  products: ProductsResponse | null;
  error: string | null;
  pendingFeature: string | null; // constraint editor opened from the impact panel
}

type Listener = (state: ExplorerState) => void;

const PAGE_SIZE = 25;

/**
 * Single source of truth for the explorer.
 *
 * Every summary/products request carries a sequence number; a response is
 * rendered only if no newer response of the same kind has been rendered,
 * so out-of-order completions can never show a summary that belongs to a
 * stale filter set.  Failed requests surface an error message without
 * clearing whatever was last rendered.
 */
export class ExplorerStore {
  private state: ExplorerState = {
    datasetId: null,
    filters: [],
    mode: 'full',
    page: 1,
    features: [],
    summary: null,
    products: null,
    error: null,
    pendingFeature: null,
  };

  private listeners: Listener[] = [];
  private summaryIssued = 0;
  private summaryRendered = 0;
  private productsIssued = 0;
  private productsRendered = 0;

  constructor(private api: ApiClient) {}

  getState(): ExplorerState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private setState(patch: Partial<ExplorerState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  filterQuery(): string {
    return termsToQuery(this.state.filters);
  }

  knownFeature(name: string): boolean {
    return this.state.features.some((f) => f.name === name);
  }

  async selectDataset(datasetId: string, keepView = false): Promise<void> {
    const features = await this.api.fetchFeatures(datasetId);
    this.setState({
      datasetId,
      features: features.features,
      ...(keepView ? {} : { filters: [], page: 1 }),
      error: null,
    });
    await this.refresh();
  }

  /** Add (or replace) one conjunctive term.  Unknown features are rejected
   * client-side before any request goes out. */
  async applyFilter(term: FilterTerm): Promise<void> {
    if (!this.state.datasetId) return;
    if (!this.knownFeature(term.feature)) {
      this.setState({ error: `unknown feature: ${term.feature}` });
      return;
    }
    const others = this.state.filters.filter((t) => t.feature !== term.feature);
    this.setState({ filters: [...others, term], page: 1, pendingFeature: null });
    await this.refresh();
  }

  async removeFilter(feature: string): Promise<void> {
    this.setState({
      filters: this.state.filters.filter((t) => t.feature !== feature),
      page: 1,
    });
    await this.refresh();
  }

  async setMode(mode: SummaryMode): Promise<void> {
    this.setState({ mode });
    await this.refresh();
  }

  async setPage(page: number): Promise<void> {
    this.setState({ page });
    await this.refreshProducts();
  }

  /** Start a constraint editor for a feature (e.g. clicked in the impact
   * panel); no request is issued until the constraint is applied. */
  editFilter(feature: string): void {
    if (!this.knownFeature(feature)) return;
    this.setState({ pendingFeature: feature });
  }

  /** Restore a deep-linked view in one shot. */
  async restore(
    datasetId: string,
    filters: FilterTerm[],
    mode: SummaryMode,
    page: number,
  ): Promise<void> {
    const features = await this.api.fetchFeatures(datasetId);
    this.setState({
      datasetId,
      features: features.features,
      filters,
      mode,
      page,
      error: null,
    });
    await this.refresh();
  }

  async refresh(): Promise<void> {
    await Promise.all([this.refreshSummary(), this.refreshProducts()]);
  }

  private async refreshSummary(): Promise<void> {
    const { datasetId, mode } = this.state;
    if (!datasetId) return;
    const seq = ++this.summaryIssued;
    try {
      const summary = await this.api.fetchSummary(datasetId, mode, this.filterQuery());
      if (seq <= this.summaryRendered) return; // a newer response already rendered
      this.summaryRendered = seq;
      this.setState({ summary, error: null });
    } catch (error) {
      if (seq <= this.summaryRendered) return;
      this.summaryRendered = seq;
      // keep the previous summary on screen, just surface the message
      this.setState({ error: describeError(error) });
    }
  }

  private async refreshProducts(): Promise<void> {
    const { datasetId, page } = this.state;
    if (!datasetId) return;
    const seq = ++this.productsIssued;
    try {
      const products = await this.api.fetchProducts(
        datasetId,
        this.filterQuery(),
        page,
        PAGE_SIZE,
      );
      if (seq <= this.productsRendered) return;
      this.productsRendered = seq;
      this.setState({ products });
    } catch (error) {
      if (seq <= this.productsRendered) return;
      this.productsRendered = seq;
      this.setState({ error: describeError(error) });
    }
  }
}

function describeError(error: unknown): string {
  if (error instanceof Error) return error.message;
  return String(error);
}
