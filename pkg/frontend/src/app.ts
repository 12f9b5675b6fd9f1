// Page assembly: header with conflict banner, icicle overview, node
// editor, sheet and score panels, all re-rendered from store state.

import { renderEditor } from './render/editorView.js';
import { renderIcicle } from './render/icicleView.js';
import { renderScores } from './render/scoreView.js';
import { renderTables } from './render/tableView.js';
import type { AppStore } from './store.js';

function renderHeader(container: HTMLElement, store: AppStore): void {
  container.textContent = '';
  if (!store.doc) return;
  const doc = store.doc;

  const title = document.createElement('h1');
  title.textContent = doc.goal;
  container.appendChild(title);

  if (doc.scoring_goal) {
    const scoring = document.createElement('p');
    scoring.className = 'scoring-goal';
    scoring.textContent = doc.scoring_goal;
    container.appendChild(scoring);
  }

  const status = document.createElement('p');
  status.className = 'doc-status';
  status.textContent = `version ${doc.version}` + (store.busy ? ' · saving…' : '');
  container.appendChild(status);

  if (store.conflict) {
    const banner = document.createElement('div');
    banner.className = 'conflict-banner';
    const text = document.createElement('span');
    text.textContent =
      `This decision changed elsewhere (now at version ${store.conflict.currentVersion}). ` +
      'Reload to pick up the latest state; nothing was overwritten.';
    banner.appendChild(text);
    const reload = document.createElement('button');
    reload.className = 'reload';
    reload.textContent = 'Reload';
    reload.addEventListener('click', () => {
      void store.reload();
    });
    banner.appendChild(reload);
    container.appendChild(banner);
  }

  if (store.lastError) {
    const error = document.createElement('p');
    error.className = 'error-line';
    error.textContent = store.lastError;
    container.appendChild(error);
  }
}

export interface AppPanels {
  header: HTMLElement;
  icicle: HTMLElement;
  editor: HTMLElement;
  tables: HTMLElement;
  scores: HTMLElement;
}

export function buildPanels(root: HTMLElement): AppPanels {
  root.textContent = '';
  const header = document.createElement('header');
  header.id = 'header';
  const icicle = document.createElement('section');
  icicle.id = 'icicle-pane';
  const editor = document.createElement('section');
  editor.id = 'editor-pane';
  const tables = document.createElement('section');
  tables.id = 'table-pane';
  const scores = document.createElement('section');
  scores.id = 'score-pane';

  const main = document.createElement('div');
  main.className = 'columns';
  main.append(editor, scores);

  root.append(header, icicle, main, tables);
  return { header, icicle, editor, tables, scores };
}

export function mountApp(root: HTMLElement, store: AppStore, icicleWidth = 960): () => void {
  const panels = buildPanels(root);
  const render = () => {
    renderHeader(panels.header, store);
    renderIcicle(panels.icicle, store, icicleWidth);
    renderEditor(panels.editor, store);
    renderTables(panels.tables, store);
    renderScores(panels.scores, store);
  };
  const unsubscribe = store.subscribe(render);
  render();
  return unsubscribe;
}
