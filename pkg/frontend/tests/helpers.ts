import type { DomainInfo } from '../src/types';

export const TEST_DOMAIN: DomainInfo = {
  id: 'respiratory',
  parameters: [
    {
      name: 'temperature',
      kind: 'numeric',
      units: 'C',
      range: [35.0, 42.0],
      help: 'Body temperature measured at rest.',
    },
    { name: 'headache', kind: 'ordinal', levels: ['none', 'small', 'moderate', 'strong'] },
    { name: 'general_aches', kind: 'ordinal', levels: ['none', 'slight', 'moderate', 'severe'] },
    { name: 'exhaustion', kind: 'ordinal', levels: ['none', 'small', 'moderate', 'extreme'] },
    { name: 'weakness', kind: 'categorical', labels: ['yes', 'no'] },
    { name: 'cough', kind: 'categorical', labels: ['yes', 'no'] },
    { name: 'stuffy_runny_nose', kind: 'categorical', labels: ['yes', 'no'] },
    { name: 'sneezing', kind: 'categorical', labels: ['yes', 'no'] },
    { name: 'allergy_anamnesis', kind: 'categorical', labels: ['yes', 'no'] },
  ],
  solutions: [
    { id: 'airborne_allergy', label: 'Airborne Allergy' },
    { id: 'cold', label: 'Cold' },
    { id: 'flu', label: 'Flu' },
  ],
};

export async function waitFor(
  condition: () => boolean,
  timeoutMs = 20000,
  what = 'condition',
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (condition()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for ${what}`);
}

export function click(el: Element | null): void {
  if (!el) throw new Error('element to click not found');
  (el as HTMLElement).click();
}

export function setValue(el: Element | null, value: string): void {
  if (!el) throw new Error('input element not found');
  const input = el as HTMLInputElement;
  input.value = value;
  input.dispatchEvent(new Event('input', { bubbles: true }));
  input.dispatchEvent(new Event('change', { bubbles: true }));
}

export function selectMulti(el: Element | null, values: string[]): void {
  if (!el) throw new Error('select element not found');
  const select = el as HTMLSelectElement;
  for (const opt of Array.from(select.options)) {
    opt.selected = values.includes(opt.value);
  }
  select.dispatchEvent(new Event('change', { bubbles: true }));
}

/**
 * Assert that the DOM shows no solution id or label the user has not
 * announced. Transient pickers must be closed when this runs.
 */
export function assertNoForeignSolutions(
  root: HTMLElement,
  domain: DomainInfo,
  announced: Set<string>,
): void {
  const text = root.textContent ?? '';
  for (const s of [...domain.solutions, { id: 'undetermined', label: 'undetermined' }]) {
    if (announced.has(s.id)) continue;
    if (text.includes(s.id)) {
      throw new Error(`DOM leaked unannounced solution id ${s.id}`);
    }
    if (s.label && text.includes(s.label)) {
      throw new Error(`DOM leaked unannounced solution label ${s.label}`);
    }
  }
}
