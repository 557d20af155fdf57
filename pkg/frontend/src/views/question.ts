import { buildInput } from '../inputs';
import type { AnswerPayload, DomainInfo, ErrorRow, QuestionView } from '../types';
import { renderErrorTable } from './errortable';

export interface QuestionHandlers {
  answer(payload: AnswerPayload): void;
  changeDecision(solution: string): void;
  reviseValue(name: string, value: unknown): void;
}

function paramInfo(domain: DomainInfo, name: string) {
  const p = domain.parameters.find((x) => x.name === name);
  if (!p) throw new Error(`unknown parameter ${name}`);
  return p;
}

/**
 * Transient decision picker: solution options enter the DOM only while the
 * user is actively choosing, so a rendered session never lists solutions the
 * user has not announced.
 */
function decisionPicker(
  doc: Document,
  domain: DomainInfo,
  mount: HTMLElement,
  onPick: (solution: string) => void,
): void {
  const button = doc.createElement('button');
  button.textContent = 'Change decision…';
  button.setAttribute('data-role', 'open-decision');
  button.addEventListener('click', () => {
    button.remove();
    const select = doc.createElement('select');
    select.setAttribute('data-role', 'decision-picker');
    for (const s of domain.solutions) {
      const opt = doc.createElement('option');
      opt.value = s.id;
      opt.textContent = s.label || s.id;
      select.appendChild(opt);
    }
    const confirm = doc.createElement('button');
    confirm.textContent = 'Confirm decision';
    confirm.setAttribute('data-role', 'confirm-decision');
    confirm.addEventListener('click', () => {
      const chosen = select.value;
      select.remove();
      confirm.remove();
      onPick(chosen);
    });
    mount.append(select, confirm);
  });
  mount.appendChild(button);
}

export function renderQuestion(
  container: HTMLElement,
  domain: DomainInfo,
  question: QuestionView,
  handlers: QuestionHandlers,
  evidence: Record<string, unknown> = {},
): void {
  const doc = container.ownerDocument;
  container.innerHTML = '';
  const card = doc.createElement('section');
  card.className = `question scenario-${question.scenario}`;
  card.setAttribute('data-question', question.id);
  card.setAttribute('data-kind', question.kind);

  const prompt = doc.createElement('p');
  prompt.className = 'prompt';
  prompt.textContent = question.prompt;
  card.appendChild(prompt);
  const why = doc.createElement('p');
  why.className = 'why';
  why.textContent = `Why asked: ${question.why}`;
  card.appendChild(why);

  switch (question.kind) {
    case 'inconsistency':
      renderInconsistency(doc, card, domain, question, handlers);
      break;
    case 'value_request':
    case 'remeasure_request':
      renderValueRequest(doc, card, domain, question, handlers);
      break;
    case 'precedent_review':
      renderReview(doc, card, question, handlers, evidence);
      break;
  }
  container.appendChild(card);
}

function renderInconsistency(
  doc: Document,
  card: HTMLElement,
  domain: DomainInfo,
  question: QuestionView,
  handlers: QuestionHandlers,
): void {
  const conflict = (question.details.conflict ?? {}) as Record<string, unknown>;
  const list = doc.createElement('ul');
  list.className = 'conflict';
  for (const [name, value] of Object.entries(conflict)) {
    const li = doc.createElement('li');
    li.textContent = `${name}: ${JSON.stringify(value)}`;
    list.appendChild(li);
  }
  card.appendChild(list);

  const revise = doc.createElement('div');
  revise.className = 'revise';
  for (const name of question.subject) {
    const input = buildInput(doc, paramInfo(domain, name));
    const send = doc.createElement('button');
    send.textContent = `Revise ${name}`;
    send.setAttribute('data-role', `revise-${name}`);
    send.addEventListener('click', () => {
      if (input.problem()) return;
      const value = input.read();
      if (value !== undefined) handlers.reviseValue(name, value);
    });
    input.root.appendChild(send);
    revise.appendChild(input.root);
  }
  card.appendChild(revise);

  const actions = doc.createElement('div');
  actions.className = 'actions';
  decisionPicker(doc, domain, actions, (solution) =>
    handlers.answer({ question_id: question.id, kind: 'decision', solution }),
  );
  const insist = doc.createElement('button');
  insist.textContent = 'Keep my decision and these values';
  insist.setAttribute('data-role', 'insist');
  insist.addEventListener('click', () =>
    handlers.answer({ question_id: question.id, kind: 'ack' }),
  );
  actions.appendChild(insist);
  card.appendChild(actions);
}

function renderValueRequest(
  doc: Document,
  card: HTMLElement,
  domain: DomainInfo,
  question: QuestionView,
  handlers: QuestionHandlers,
): void {
  const name = question.subject[0];
  const input = buildInput(doc, paramInfo(domain, name));
  card.appendChild(input.root);
  const send = doc.createElement('button');
  send.textContent = 'Send value';
  send.setAttribute('data-role', 'send-value');
  send.addEventListener('click', () => {
    if (input.problem()) return;
    const value = input.read();
    if (value === undefined) return;
    handlers.answer({ question_id: question.id, kind: 'value', name, value });
  });
  card.appendChild(send);
  const skip = doc.createElement('button');
  skip.textContent = 'Cannot provide';
  skip.setAttribute('data-role', 'skip');
  skip.addEventListener('click', () => handlers.answer({ question_id: question.id, kind: 'ack' }));
  card.appendChild(skip);
}

function renderReview(
  doc: Document,
  card: HTMLElement,
  question: QuestionView,
  handlers: QuestionHandlers,
  evidence: Record<string, unknown>,
): void {
  const warning = question.details.warning as ErrorRow | null;
  if (warning && warning.error_explanation) {
    const banner = doc.createElement('p');
    banner.className = 'warning';
    banner.setAttribute('data-role', 'warning');
    banner.textContent = `Most probable error here: ${warning.error_explanation}`;
    card.appendChild(banner);
  }
  const rows = (question.details.rows ?? []) as ErrorRow[];
  const tableMount = doc.createElement('div');
  renderErrorTable(tableMount, rows);
  card.appendChild(tableMount);

  const attach = doc.createElement('details');
  const summary = doc.createElement('summary');
  summary.textContent = 'Attach a similar case you remember (reuses the current evidence)';
  attach.appendChild(summary);
  const decision = doc.createElement('input');
  decision.placeholder = 'decision you made then (solution id)';
  decision.setAttribute('data-role', 'attach-decision');
  const prognosis = doc.createElement('input');
  prognosis.placeholder = 'prognosis you had';
  prognosis.setAttribute('data-role', 'attach-prognosis');
  const send = doc.createElement('button');
  send.textContent = 'Attach precedent';
  send.setAttribute('data-role', 'attach');
  send.addEventListener('click', () => {
    if (!prognosis.value.trim() || !decision.value.trim()) return;
    handlers.answer({
      question_id: question.id,
      kind: 'attach_precedent',
      attachment: {
        case: evidence,
        decision: decision.value.trim(),
        prognosis: prognosis.value,
      },
    });
  });
  attach.append(decision, prognosis, send);
  card.appendChild(attach);

  const ack = doc.createElement('button');
  ack.textContent = 'Reviewed, continue';
  ack.setAttribute('data-role', 'ack-review');
  ack.addEventListener('click', () => handlers.answer({ question_id: question.id, kind: 'ack' }));
  card.appendChild(ack);
}
