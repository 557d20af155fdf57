import { ApiClient, ApiError } from './api';
import { SessionStore } from './store';
import type { AnswerPayload, DomainInfo, SessionView } from './types';
import { renderFinalize, renderOutcomeForm } from './views/finalize';
import { renderHistory } from './views/history';
import { renderIntake } from './views/intake';
import { renderQuestion } from './views/question';

export interface AppOptions {
  baseUrl: string;
  token: string;
  user: string;
  domainId: string;
  fetchFn?: typeof fetch;
  seed?: number;
}

/**
 * The single-page dialogue client. Everything rendered inside the session
 * area comes from the server's session view (plus the user's own keystrokes),
 * so the machine's internal solution can never reach the DOM.
 */
export class App {
  readonly client: ApiClient;
  readonly store = new SessionStore();
  domain: DomainInfo | null = null;
  precedentId: string | null = null;

  private statusBox!: HTMLElement;
  private sessionBox!: HTMLElement;
  private mainBox!: HTMLElement;

  constructor(
    private root: HTMLElement,
    private options: AppOptions,
  ) {
    this.client = new ApiClient(options.baseUrl, options.token, options.fetchFn);
  }

  async start(): Promise<void> {
    const doc = this.root.ownerDocument;
    this.root.innerHTML = '';
    this.statusBox = doc.createElement('div');
    this.statusBox.className = 'status';
    this.statusBox.setAttribute('data-role', 'status');
    this.sessionBox = doc.createElement('div');
    this.sessionBox.className = 'session-head';
    this.mainBox = doc.createElement('div');
    this.mainBox.className = 'main';
    this.root.append(this.statusBox, this.sessionBox, this.mainBox);

    this.store.subscribe(() => this.renderStatus());
    this.domain = await this.client.getDomain(this.options.domainId);
    this.showIntake();
  }

  private renderStatus(): void {
    const { busy, error } = this.store.get();
    this.statusBox.textContent = error ? `Problem: ${error}` : busy ? 'Working…' : '';
  }

  private showIntake(): void {
    renderIntake(this.mainBox, this.domain!, (submission) => {
      void this.run(async () => {
        const view = await this.client.createSession({
          domain: this.options.domainId,
          solution: submission.solution,
          evidence: submission.evidence,
          seed: this.options.seed,
        });
        return view;
      });
    });
  }

  /** One in-flight request; stale responses are dropped by the store. */
  private async run(action: () => Promise<SessionView>): Promise<void> {
    if (this.store.get().busy) return;
    const token = this.store.begin();
    try {
      const view = await action();
      if (this.store.accept(token, view)) this.renderSession(view);
    } catch (err) {
      this.store.fail(err instanceof ApiError ? err.detail : String(err));
      // re-sync after an error so the view reflects the server's state
      const current = this.store.get().view;
      if (current) {
        try {
          const fresh = await this.client.getSession(current.id);
          const t2 = this.store.begin();
          if (this.store.accept(t2, fresh)) this.renderSession(fresh);
          this.store.fail(err instanceof ApiError ? err.detail : String(err));
        } catch {
          /* the original error message stays visible */
        }
      }
    }
  }

  private renderSession(view: SessionView): void {
    const doc = this.root.ownerDocument;
    this.sessionBox.innerHTML = '';
    const head = doc.createElement('p');
    head.setAttribute('data-role', 'session-head');
    head.textContent = `Case ${view.id} — your decision: ${view.solution}`;
    this.sessionBox.appendChild(head);

    if (view.pending_question) {
      renderQuestion(
        this.mainBox,
        this.domain!,
        view.pending_question,
        {
          answer: (payload: AnswerPayload) =>
            void this.run(() => this.client.answer(view.id, payload)),
          changeDecision: (solution: string) =>
            void this.run(() => this.client.changeDecision(view.id, solution)),
          reviseValue: (name: string, value: unknown) =>
            void this.run(() =>
              this.client.answer(view.id, {
                question_id: view.pending_question!.id,
                kind: 'value',
                name,
                value,
              }),
            ),
        },
        view.evidence,
      );
      // the dialogue is turn-based: after each action the question endpoint
      // is polled once to confirm the pending turn (stale replies discarded)
      void this.pollQuestion(view.id);
    } else if (view.state === 'FINALIZE') {
      renderFinalize(
        this.mainBox,
        this.domain!,
        view.solution,
        view.finalize_prompt ?? 'State your final decision and prognosis.',
        (submission) => void this.finalize(view.id, submission.prognosis, submission.solution),
      );
    } else if (view.state === 'CLOSED') {
      this.showClosed(view);
    }
  }

  private async pollQuestion(sessionId: string): Promise<void> {
    try {
      const current = this.store.get().view;
      const fresh = await this.client.getQuestion(sessionId);
      if (!current || current.id !== sessionId) return;
      const pendingId = current.pending_question?.id ?? null;
      const freshId = fresh.question?.id ?? null;
      if (pendingId !== freshId) {
        const view = await this.client.getSession(sessionId);
        const token = this.store.begin();
        if (this.store.accept(token, view)) this.renderSession(view);
      }
    } catch {
      /* polling is best-effort; the next user action re-syncs */
    }
  }

  private async finalize(sessionId: string, prognosis: string, solution: string): Promise<void> {
    if (this.store.get().busy) return;
    const token = this.store.begin();
    try {
      const result = await this.client.finalize(sessionId, prognosis, solution);
      this.precedentId = result.precedent_id;
      if (this.store.accept(token, result.session)) this.renderSession(result.session);
    } catch (err) {
      this.store.fail(err instanceof ApiError ? err.detail : String(err));
    }
  }

  private showClosed(view: SessionView): void {
    const doc = this.root.ownerDocument;
    this.mainBox.innerHTML = '';
    const done = doc.createElement('p');
    done.setAttribute('data-role', 'closed');
    done.textContent = `Case closed with decision ${view.final_solution}.`;
    this.mainBox.appendChild(done);

    if (this.precedentId) {
      const outcomeMount = doc.createElement('div');
      this.mainBox.appendChild(outcomeMount);
      renderOutcomeForm(outcomeMount, this.precedentId, (submission) => {
        void (async () => {
          try {
            await this.client.submitOutcome(
              this.precedentId!,
              submission.outcome,
              submission.matchesPrognosis,
              submission.discrepancyExplanation,
            );
            if (submission.errorExplanation) {
              await this.client.updateErrorExplanation(
                this.precedentId!,
                submission.errorExplanation,
              );
            }
            outcomeMount.innerHTML = '';
            const ok = doc.createElement('p');
            ok.setAttribute('data-role', 'outcome-recorded');
            ok.textContent = 'Outcome recorded.';
            outcomeMount.appendChild(ok);
          } catch (err) {
            this.store.fail(err instanceof ApiError ? err.detail : String(err));
          }
        })();
      });
    }

    const historyButton = doc.createElement('button');
    historyButton.textContent = 'Show my history and progress';
    historyButton.setAttribute('data-role', 'show-history');
    historyButton.addEventListener('click', () => void this.showHistory());
    this.mainBox.appendChild(historyButton);
  }

  async showHistory(): Promise<void> {
    const [errors, stats] = await Promise.all([
      this.client.getErrors(this.options.user, this.options.domainId),
      this.client.getStats(this.options.user, this.options.domainId),
    ]);
    const mount = this.root.ownerDocument.createElement('div');
    mount.setAttribute('data-role', 'history');
    this.mainBox.appendChild(mount);
    renderHistory(mount, errors.rows, stats.windows);
  }
}
