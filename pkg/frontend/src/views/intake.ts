import { buildInput, type TypedInput } from '../inputs';
import type { DomainInfo } from '../types';

export interface IntakeSubmission {
  solution: string;
  evidence: Record<string, unknown>;
}

/**
 * Decision selector over the domain's solutions plus one typed input per
 * parameter; only filled parameters are submitted, and at least one must be.
 */
export function renderIntake(
  container: HTMLElement,
  domain: DomainInfo,
  onSubmit: (s: IntakeSubmission) => void,
): void {
  const doc = container.ownerDocument;
  container.innerHTML = '';
  const form = doc.createElement('section');
  form.className = 'intake';

  const heading = doc.createElement('h2');
  heading.textContent = 'New case';
  form.appendChild(heading);

  const decisionField = doc.createElement('div');
  decisionField.className = 'field';
  const decisionLabel = doc.createElement('label');
  decisionLabel.textContent = 'Your decision';
  const decisionSelect = doc.createElement('select');
  decisionSelect.setAttribute('data-role', 'decision');
  for (const s of domain.solutions) {
    const opt = doc.createElement('option');
    opt.value = s.id;
    opt.textContent = s.label || s.id;
    decisionSelect.appendChild(opt);
  }
  decisionField.append(decisionLabel, decisionSelect);
  form.appendChild(decisionField);

  const inputs: TypedInput[] = [];
  const byName = new Map<string, TypedInput>();
  for (const p of domain.parameters) {
    const input = buildInput(doc, p);
    inputs.push(input);
    byName.set(p.name, input);
    form.appendChild(input.root);
  }

  const message = doc.createElement('p');
  message.className = 'form-message';
  form.appendChild(message);

  const submit = doc.createElement('button');
  submit.textContent = 'Start dialogue';
  submit.setAttribute('data-role', 'start');
  submit.addEventListener('click', () => {
    message.textContent = '';
    const problems = inputs.map((i) => i.problem()).filter((m): m is string => m !== null);
    if (problems.length > 0) {
      message.textContent = problems[0];
      return;
    }
    const evidence: Record<string, unknown> = {};
    for (const [name, input] of byName) {
      const value = input.read();
      if (value !== undefined) evidence[name] = value;
    }
    if (Object.keys(evidence).length === 0) {
      message.textContent = 'Provide at least one parameter before starting.';
      return;
    }
    onSubmit({ solution: decisionSelect.value, evidence });
  });
  form.appendChild(submit);
  container.appendChild(form);
}
