import type { SummaryResponse } from './types.js';

export interface PanelSection {
  label: string;
  text: string;
}

export interface SummaryPanel {
  sections: PanelSection[];
  /** impact feature names, clickable to pre-populate a filter term */
  impactFeatures: string[];
  /** true when the structured document was missing and the raw text is shown */
  fallback: boolean;
}

/**
 * Turn a summary response into labeled sections.
 *
 * Sections are produced by splitting the service's text on blank lines, so
 * joining the section texts back with blank lines reproduces the summary
 * byte-for-byte; no text is rewritten client-side.
 */
export function summaryPanel(response: SummaryResponse): SummaryPanel {
  const paragraphs = response.summary.split('\n\n');
  const doc = response.document;
  if (!doc) {
    return {
      sections: [{ label: '', text: response.summary }],
      impactFeatures: [],
      fallback: true,
    };
  }
  const labels: string[] = ['Price curve'];
  if (doc.mode !== 'baseline') {
    if (doc.common.length) labels.push('Common features');
    if (doc.impact.length) labels.push('Price impact');
  }
  while (labels.length < paragraphs.length) labels.push('Highlights');
  const sections = paragraphs.map((text, i) => ({ label: labels[i] ?? '', text }));
  return {
    sections,
    impactFeatures: doc.mode === 'baseline' ? [] : doc.impact.map((p) => p.feature),
    fallback: false,
  };
}

export function panelText(panel: SummaryPanel): string {
  return panel.sections.map((s) => s.text).join('\n\n');
}

const ESCAPES: Record<string, string> = {
  '&': '&amp;',
  '<': '&lt;',
  '>': '&gt;',
  '"': '&quot;',
  "'": '&#39;',
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"']/g, (c) => ESCAPES[c] ?? c);
}

/** HTML for the summary panel; impact features become buttons carrying a
 * data-feature attribute the DOM layer listens on. */
export function summaryPanelHtml(panel: SummaryPanel): string {
  const blocks = panel.sections.map((section) => {
    const label = section.label
      ? `<h3 class="section-label">${escapeHtml(section.label)}</h3>`
      : '';
    let body = escapeHtml(section.text);
    if (section.label === 'Price impact') {
      for (const feature of panel.impactFeatures) {
        const escaped = escapeHtml(feature);
        body = body.replace(
          escaped,
          `<button class="impact-feature" data-feature="${escaped}">${escaped}</button>`,
        );
      }
    }
    return `<section class="summary-section">${label}<p>${body}</p></section>`;
  });
  return blocks.join('');
}
