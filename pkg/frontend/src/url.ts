import type { FilterTerm, SummaryMode } from './types.js';
import { queryToTerms, termsToQuery } from './types.js';

/** The portion of ExplorerState that deep links must reproduce. */
export interface UrlState {
  datasetId: string | null;
  filters: FilterTerm[];
  mode: SummaryMode;
  page: number;
}

const MODES: SummaryMode[] = ['baseline', 'full', 'extended'];

export function encodeState(state: UrlState): string {
  const params = new URLSearchParams();
  if (state.datasetId) params.set('dataset', state.datasetId);
  if (state.filters.length) params.set('filter', termsToQuery(state.filters));
  if (state.mode !== 'full') params.set('mode', state.mode);
  if (state.page !== 1) params.set('page', String(state.page));
  return params.toString();
}

export function decodeState(queryString: string): UrlState {
  const params = new URLSearchParams(queryString);
  const rawMode = params.get('mode') ?? 'full';
  const mode = (MODES as string[]).includes(rawMode) ? (rawMode as SummaryMode) : 'full';
  const rawPage = Number(params.get('page') ?? '1');
  return {
    datasetId: params.get('dataset'),
    filters: queryToTerms(params.get('filter') ?? ''),
    mode,
    page: Number.isInteger(rawPage) && rawPage >= 1 ? rawPage : 1,
  };
}
