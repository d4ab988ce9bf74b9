/** Payload shapes of the setsumm HTTP API. */

export type SummaryMode = 'baseline' | 'full' | 'extended';

export interface DatasetInfo {
  id: string;
  category: string;
  product_count: number;
}

export interface FeatureInfo {
  name: string;
  kind: 'boolean' | 'categorical' | 'numeric';
  domain: Array<string | number | boolean> | { min: number | null; max: number | null };
}

export interface FeaturesResponse {
  price_feature: string;
  features: FeatureInfo[];
}

export interface CurveInfo {
  total_count: number;
  inlier_count: number;
  inlier_lo: number;
  inlier_hi: number;
  median_rounded: number;
  median_raw: number;
  mad_raw: number;
}

export interface CommonFeatureInfo {
  feature: string;
  value: string | number | boolean;
  prevalence: number;
  quantifier: string;
}

export interface ImpactFeatureInfo {
  feature: string;
  kind: string;
  modal_value: string | number | boolean | null;
  prevalence: number;
  impact_score: number;
  groups: Array<{ value: string | number | boolean; mean_price: number; support: number }>;
  direction: string | null;
}

export interface SummaryDocument {
  category: string;
  mode: SummaryMode;
  curve: CurveInfo;
  common: CommonFeatureInfo[];
  impact: ImpactFeatureInfo[];
  contrast?: Array<{
    feature: string;
    value: string | number | boolean;
    target_prevalence: number;
    superset_prevalence: number;
  }>;
  contrast_superset?: string | null;
  directions?: Array<{ feature: string; direction: string }>;
}

export interface SummaryResponse {
  dataset: string;
  mode: SummaryMode;
  filter: string;
  product_count: number;
  summary: string;
  document: SummaryDocument | null;
}

export interface ProductRow {
  id: number;
  values: Record<string, string | number | boolean | null>;
}

export interface ProductsResponse {
  products: ProductRow[];
  page: number;
  page_size: number;
  total: number;
  category: string;
}

/** One conjunctive filter term; `value` keeps the service syntax
 * (`true`, `4K`, `100..300`). */
export interface FilterTerm {
  feature: string;
  value: string;
}

export function termsToQuery(terms: FilterTerm[]): string {
  return terms.map((t) => `${t.feature}=${t.value}`).join(';');
}

export function queryToTerms(query: string): FilterTerm[] {
  if (!query) return [];
  const terms: FilterTerm[] = [];
  for (const part of query.split(';')) {
    const trimmed = part.trim();
    if (!trimmed) continue;
    const eq = trimmed.indexOf('=');
    if (eq <= 0) continue;
    terms.push({ feature: trimmed.slice(0, eq).trim(), value: trimmed.slice(eq + 1).trim() });
  }
  return terms;
}
