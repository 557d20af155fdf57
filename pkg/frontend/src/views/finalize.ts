import type { DomainInfo } from '../types';

export interface FinalizeSubmission {
  prognosis: string;
  solution: string;
}

/** Finalize form: prognosis is mandatory; the decision defaults to the announced one. */
export function renderFinalize(
  container: HTMLElement,
  domain: DomainInfo,
  currentSolution: string,
  prompt: string,
  onSubmit: (s: FinalizeSubmission) => void,
): void {
  const doc = container.ownerDocument;
  container.innerHTML = '';
  const card = doc.createElement('section');
  card.className = 'finalize';

  const heading = doc.createElement('p');
  heading.textContent = prompt;
  card.appendChild(heading);

  const current = doc.createElement('p');
  current.setAttribute('data-role', 'final-decision');
  current.textContent = `Final decision: ${currentSolution}`;
  card.appendChild(current);

  let chosen = currentSolution;
  const changeMount = doc.createElement('div');
  const changeButton = doc.createElement('button');
  changeButton.textContent = 'Pick a different final decision…';
  changeButton.setAttribute('data-role', 'open-final-decision');
  changeButton.addEventListener('click', () => {
    changeButton.remove();
    const select = doc.createElement('select');
    select.setAttribute('data-role', 'final-decision-picker');
    for (const s of domain.solutions) {
      const opt = doc.createElement('option');
      opt.value = s.id;
      opt.textContent = s.label || s.id;
      if (s.id === chosen) opt.selected = true;
      select.appendChild(opt);
    }
    const confirm = doc.createElement('button');
    confirm.textContent = 'Use this decision';
    confirm.setAttribute('data-role', 'confirm-final-decision');
    confirm.addEventListener('click', () => {
      chosen = select.value;
      current.textContent = `Final decision: ${chosen}`;
      select.remove();
      confirm.remove();
    });
    changeMount.append(select, confirm);
  });
  changeMount.appendChild(changeButton);
  card.appendChild(changeMount);

  const prognosis = doc.createElement('textarea');
  prognosis.placeholder = 'Prognosis: what do you expect to happen?';
  prognosis.setAttribute('data-role', 'prognosis');
  card.appendChild(prognosis);

  const message = doc.createElement('p');
  message.className = 'form-message';
  card.appendChild(message);

  const submit = doc.createElement('button');
  submit.textContent = 'Finalize case';
  submit.setAttribute('data-role', 'finalize');
  submit.addEventListener('click', () => {
    if (!prognosis.value.trim()) {
      message.textContent = 'A prognosis is required before finalizing.';
      return;
    }
    onSubmit({ prognosis: prognosis.value, solution: chosen });
  });
  card.appendChild(submit);
  container.appendChild(card);
}

export interface OutcomeSubmission {
  outcome: string;
  matchesPrognosis: boolean;
  discrepancyExplanation?: string;
  errorExplanation?: string;
}

/** Post-finalize panel: record the real outcome and, on a miss, the explanations. */
export function renderOutcomeForm(
  container: HTMLElement,
  precedentId: string,
  onSubmit: (s: OutcomeSubmission) => void,
): void {
  const doc = container.ownerDocument;
  container.innerHTML = '';
  const card = doc.createElement('section');
  card.className = 'outcome';
  card.setAttribute('data-precedent', precedentId);

  const heading = doc.createElement('p');
  heading.textContent = 'When the outcome is known, record it here.';
  card.appendChild(heading);

  const outcome = doc.createElement('input');
  outcome.placeholder = 'actual outcome';
  outcome.setAttribute('data-role', 'outcome');
  card.appendChild(outcome);

  const matchesLabel = doc.createElement('label');
  const matches = doc.createElement('input');
  matches.type = 'checkbox';
  matches.checked = true;
  matches.setAttribute('data-role', 'matches');
  matchesLabel.append(matches, doc.createTextNode(' outcome matches my prognosis'));
  card.appendChild(matchesLabel);

  const discrepancy = doc.createElement('textarea');
  discrepancy.placeholder = 'If it differs: explain the discrepancy (required)';
  discrepancy.setAttribute('data-role', 'discrepancy');
  card.appendChild(discrepancy);

  const errorNote = doc.createElement('textarea');
  errorNote.placeholder = 'Error note for your future self (optional; only the latest is kept)';
  errorNote.setAttribute('data-role', 'error-note');
  card.appendChild(errorNote);

  const message = doc.createElement('p');
  message.className = 'form-message';
  card.appendChild(message);

  const submit = doc.createElement('button');
  submit.textContent = 'Record outcome';
  submit.setAttribute('data-role', 'record-outcome');
  submit.addEventListener('click', () => {
    if (!outcome.value.trim()) {
      message.textContent = 'Outcome text is required.';
      return;
    }
    if (!matches.checked && !discrepancy.value.trim()) {
      message.textContent = 'A differing outcome needs a discrepancy explanation.';
      return;
    }
    onSubmit({
      outcome: outcome.value,
      matchesPrognosis: matches.checked,
      discrepancyExplanation: discrepancy.value.trim() || undefined,
      errorExplanation: errorNote.value.trim() || undefined,
    });
  });
  card.appendChild(submit);
  container.appendChild(card);
}
