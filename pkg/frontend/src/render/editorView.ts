// Node editor around the selected attribute: sankey of its children,
// per-child controls, add-child input, suggestion list, note pane
// with the reflection prompt, and the sync action.

import { sankeyLayout } from '../sankey.js';
import type { AppStore } from '../store.js';
import { childrenOf, getNode, importanceLabel, nextImportance, nodePath, parentOf } from '../tree.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const DIAGRAM_HEIGHT = 260;
const PARENT_WIDTH = 150;
const CHILD_X = 420;
const CHILD_WIDTH = 150;

function ribbonPath(x0: number, y0: number, x1: number, y1: number, h: number): string {
  const mid = (x0 + x1) / 2;
  return (
    `M ${x0} ${y0} C ${mid} ${y0}, ${mid} ${y1}, ${x1} ${y1} ` +
    `L ${x1} ${y1 + h} C ${mid} ${y1 + h}, ${mid} ${y0 + h}, ${x0} ${y0 + h} Z`
  );
}

function renderSankeySvg(store: AppStore): SVGSVGElement {
  const doc = store.doc!;
  const nodeId = store.selectedId!;
  const layout = sankeyLayout(doc, nodeId, DIAGRAM_HEIGHT);

  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('class', 'sankey');
  svg.setAttribute('width', String(CHILD_X + CHILD_WIDTH + 10));
  svg.setAttribute('height', String(DIAGRAM_HEIGHT + 10));

  const parent = document.createElementNS(SVG_NS, 'rect');
  parent.setAttribute('class', 'sankey-parent');
  parent.setAttribute('data-node-id', String(nodeId));
  parent.setAttribute('x', '0');
  parent.setAttribute('y', String(layout.parentTop));
  parent.setAttribute('width', String(PARENT_WIDTH));
  parent.setAttribute('height', String(Math.max(layout.parentHeight, 24)));
  svg.appendChild(parent);

  const parentLabel = document.createElementNS(SVG_NS, 'text');
  parentLabel.setAttribute('x', '6');
  parentLabel.setAttribute('y', String(layout.parentTop + 18));
  parentLabel.textContent = layout.name;
  svg.appendChild(parentLabel);

  for (const ribbon of layout.ribbons) {
    const flow = document.createElementNS(SVG_NS, 'path');
    flow.setAttribute('class', 'sankey-ribbon');
    flow.setAttribute('data-node-id', String(ribbon.nodeId));
    flow.setAttribute('data-height', String(ribbon.height));
    flow.setAttribute(
      'd',
      ribbonPath(PARENT_WIDTH, ribbon.sourceTop, CHILD_X, ribbon.targetTop, ribbon.height),
    );
    svg.appendChild(flow);

    const block = document.createElementNS(SVG_NS, 'rect');
    block.setAttribute('class', 'sankey-child');
    block.setAttribute('data-node-id', String(ribbon.nodeId));
    block.setAttribute('x', String(CHILD_X));
    block.setAttribute('y', String(ribbon.targetTop));
    block.setAttribute('width', String(CHILD_WIDTH));
    block.setAttribute('height', String(ribbon.height));
    block.addEventListener('click', () => {
      void store.select(ribbon.nodeId);
    });
    svg.appendChild(block);

    const label = document.createElementNS(SVG_NS, 'text');
    label.setAttribute('x', String(CHILD_X + 6));
    label.setAttribute('y', String(ribbon.targetTop + Math.min(ribbon.height / 2 + 5, ribbon.height - 2)));
    label.textContent = `${ribbon.name} ${importanceLabel(ribbon.importance)}`;
    svg.appendChild(label);
  }

  return svg;
}

function childControls(store: AppStore): HTMLElement {
  const doc = store.doc!;
  const list = document.createElement('div');
  list.className = 'child-controls';
  for (const childId of childrenOf(doc, store.selectedId!)) {
    const child = getNode(doc, childId);
    const row = document.createElement('div');
    row.className = 'child-row';
    row.dataset.nodeId = String(childId);

    const name = document.createElement('span');
    name.className = 'child-name';
    name.textContent = child.name;
    row.appendChild(name);

    const importance = document.createElement('button');
    importance.className = 'importance';
    importance.textContent = importanceLabel(child.importance);
    importance.title = 'cycle importance x1, x2, x4, x10';
    importance.disabled = store.busy;
    importance.addEventListener('click', () => {
      void store.setImportance(childId, nextImportance(child.importance));
    });
    row.appendChild(importance);

    const open = document.createElement('button');
    open.className = 'navigate';
    open.textContent = 'open';
    open.addEventListener('click', () => {
      void store.select(childId);
    });
    row.appendChild(open);

    const remove = document.createElement('button');
    remove.className = 'remove';
    remove.textContent = 'remove';
    remove.disabled = store.busy;
    remove.addEventListener('click', () => {
      void store.removeNode(childId);
    });
    row.appendChild(remove);

    list.appendChild(row);
  }
  return list;
}

function addChildForm(store: AppStore): HTMLElement {
  const form = document.createElement('form');
  form.className = 'add-child';
  const input = document.createElement('input');
  input.type = 'text';
  input.placeholder = 'new sub-attribute';
  input.name = 'child-name';
  const button = document.createElement('button');
  button.type = 'submit';
  button.textContent = 'Add';
  button.disabled = store.busy;
  form.append(input, button);
  form.addEventListener('submit', (event) => {
    event.preventDefault();
    const name = input.value.trim();
    if (!name || store.selectedId === null) return;
    void store.addChild(store.selectedId, name).then((ok) => {
      if (ok) input.value = '';
    });
  });
  return form;
}

function suggestionPane(store: AppStore): HTMLElement {
  const pane = document.createElement('div');
  pane.className = 'suggestions';
  const heading = document.createElement('h3');
  heading.textContent = 'Suggestions';
  pane.appendChild(heading);
  if (!store.suggestions) {
    const note = document.createElement('p');
    note.className = 'muted';
    note.textContent = 'loading…';
    pane.appendChild(note);
    return pane;
  }
  const list = document.createElement('ul');
  for (const candidate of store.suggestions.candidates) {
    const item = document.createElement('li');
    const button = document.createElement('button');
    button.className = 'suggestion';
    button.textContent = candidate;
    button.disabled = store.busy;
    button.addEventListener('click', () => {
      void store.acceptSuggestion(candidate);
    });
    item.appendChild(button);
    list.appendChild(item);
  }
  pane.appendChild(list);
  return pane;
}

function notePane(store: AppStore): HTMLElement {
  const doc = store.doc!;
  const node = getNode(doc, store.selectedId!);
  const pane = document.createElement('div');
  pane.className = 'note-pane';

  const prompt = document.createElement('p');
  prompt.className = 'prompt';
  prompt.textContent = store.prompt ? store.prompt.prompt : '';
  pane.appendChild(prompt);

  const text = document.createElement('textarea');
  text.value = node.note;
  text.rows = 3;
  pane.appendChild(text);

  const save = document.createElement('button');
  save.className = 'save-note';
  save.textContent = 'Save note';
  save.disabled = store.busy;
  save.addEventListener('click', () => {
    void store.setNote(node.id, text.value);
  });
  pane.appendChild(save);
  return pane;
}

export function renderEditor(container: HTMLElement, store: AppStore): void {
  container.textContent = '';
  if (!store.doc || store.selectedId === null) return;
  const doc = store.doc;

  const crumbs = document.createElement('div');
  crumbs.className = 'crumbs';
  const path = nodePath(doc, store.selectedId);
  path.forEach((name, i) => {
    if (i > 0) crumbs.appendChild(document.createTextNode(' / '));
    const span = document.createElement('span');
    span.textContent = name;
    crumbs.appendChild(span);
  });
  const up = parentOf(doc, store.selectedId);
  if (up !== null && store.selectedId !== doc.tree.root_id) {
    const back = document.createElement('button');
    back.className = 'go-up';
    back.textContent = 'up';
    back.addEventListener('click', () => {
      void store.select(up);
    });
    crumbs.appendChild(back);
  }
  container.appendChild(crumbs);

  container.appendChild(renderSankeySvg(store));
  container.appendChild(childControls(store));
  container.appendChild(addChildForm(store));
  container.appendChild(suggestionPane(store));
  container.appendChild(notePane(store));

  const sync = document.createElement('button');
  sync.className = 'save-sync';
  sync.textContent = 'Save and Sync to Sheet';
  sync.disabled = store.busy;
  sync.addEventListener('click', () => {
    void store.saveAndSync();
  });
  container.appendChild(sync);
}
