import type { SessionView } from './types';

export interface AppState {
  view: SessionView | null;
  revision: number;
  busy: boolean;
  error: string | null;
}

type Listener = (state: AppState) => void;

/**
 * Session state holder. One request may be in flight at a time; every
 * accepted server response bumps the revision, and responses started before
 * the current revision are discarded as stale.
 */
export class SessionStore {
  private state: AppState = { view: null, revision: 0, busy: false, error: null };
  private listeners: Listener[] = [];

  get(): AppState {
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit(): void {
    for (const l of [...this.listeners]) l(this.state);
  }

  /** Mark a request started; returns the revision token to hand back later. */
  begin(): number {
    this.state = { ...this.state, busy: true, error: null };
    this.emit();
    return this.state.revision;
  }

  /** Accept a server view if no newer response landed meanwhile. */
  accept(token: number, view: SessionView): boolean {
    if (token < this.state.revision) {
      // a newer response already applied; drop the stale one
      if (this.state.busy) {
        this.state = { ...this.state, busy: false };
        this.emit();
      }
      return false;
    }
    this.state = {
      view,
      revision: this.state.revision + 1,
      busy: false,
      error: null,
    };
    this.emit();
    return true;
  }

  /** Record a visible, non-blocking error message. */
  fail(message: string): void {
    this.state = { ...this.state, busy: false, error: message };
    this.emit();
  }

  clearError(): void {
    if (this.state.error !== null) {
      this.state = { ...this.state, error: null };
      this.emit();
    }
  }
}
