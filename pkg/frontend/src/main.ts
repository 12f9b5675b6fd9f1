// Entry point: pick the service base URL and decision id from the
// query string; without an id, offer the list plus a create form.

import { ServiceClient } from './api.js';
import { mountApp } from './app.js';
import { AppStore } from './store.js';

function serviceUrl(params: URLSearchParams): string {
  return params.get('api') ?? 'http://127.0.0.1:8000';
}

async function renderPicker(root: HTMLElement, client: ServiceClient): Promise<void> {
  root.textContent = '';
  const heading = document.createElement('h1');
  heading.textContent = 'Decisions';
  root.appendChild(heading);

  const { decisions } = await client.listDecisions();
  if (decisions.length > 0) {
    const list = document.createElement('ul');
    for (const summary of decisions) {
      const item = document.createElement('li');
      const link = document.createElement('a');
      const params = new URLSearchParams(window.location.search);
      params.set('id', summary.id);
      link.href = `?${params}`;
      link.textContent = `${summary.goal} (v${summary.version})`;
      item.appendChild(link);
      list.appendChild(item);
    }
    root.appendChild(list);
  } else {
    const empty = document.createElement('p');
    empty.textContent = 'No decisions yet.';
    root.appendChild(empty);
  }

  const form = document.createElement('form');
  form.className = 'create-form';
  form.innerHTML = `
    <h2>New decision</h2>
    <label>Goal <input name="goal" required></label>
    <label>Alternatives (comma separated) <input name="alternatives" required></label>
    <label>Attributes (comma separated, optional) <input name="attributes"></label>
    <label>Scoring goal <input name="scoring_goal"></label>
    <button type="submit">Create</button>
  `;
  form.addEventListener('submit', (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const split = (raw: FormDataEntryValue | null) =>
      String(raw ?? '')
        .split(',')
        .map((s) => s.trim())
        .filter(Boolean);
    void client
      .createDecision({
        goal: String(data.get('goal') ?? ''),
        alternatives: split(data.get('alternatives')),
        attributes: split(data.get('attributes')),
        scoring_goal: String(data.get('scoring_goal') ?? ''),
      })
      .then((created) => {
        const params = new URLSearchParams(window.location.search);
        params.set('id', created.id);
        window.location.search = `?${params}`;
      })
      .catch((err) => {
        alert(err instanceof Error ? err.message : String(err));
      });
  });
  root.appendChild(form);
}

export async function start(root: HTMLElement): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const client = new ServiceClient(serviceUrl(params));
  const id = params.get('id');
  if (!id) {
    await renderPicker(root, client);
    return;
  }
  const store = new AppStore(client, id);
  mountApp(root, store, Math.max(root.clientWidth || 960, 320));
  await store.load();
}

const rootElement = typeof document !== 'undefined' ? document.getElementById('app') : null;
if (rootElement) {
  start(rootElement).catch((err) => {
    rootElement.textContent = `failed to start: ${err instanceof Error ? err.message : err}`;
  });
}
