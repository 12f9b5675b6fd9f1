// Tree overview: one SVG rect per node, width tracking effective
// weight share, click to select.

import { icicleLayout } from '../icicle.js';
import type { AppStore } from '../store.js';

const ROW_HEIGHT = 40;
const SVG_NS = 'http://www.w3.org/2000/svg';

export function renderIcicle(container: HTMLElement, store: AppStore, width = 960): void {
  container.textContent = '';
  if (!store.doc) return;
  const layout = icicleLayout(store.doc, width);

  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('class', 'icicle');
  svg.setAttribute('width', String(width));
  svg.setAttribute('height', String((layout.depth + 1) * ROW_HEIGHT));
  svg.setAttribute('role', 'tree');

  for (const block of layout.blocks) {
    const group = document.createElementNS(SVG_NS, 'g');
    group.setAttribute('class', 'icicle-block' + (block.nodeId === store.selectedId ? ' selected' : ''));
    group.setAttribute('data-node-id', String(block.nodeId));

    const rect = document.createElementNS(SVG_NS, 'rect');
    rect.setAttribute('x', String(block.x));
    rect.setAttribute('y', String(block.depth * ROW_HEIGHT));
    rect.setAttribute('width', String(Math.max(block.width - 1, 0.5)));
    rect.setAttribute('height', String(ROW_HEIGHT - 2));
    group.appendChild(rect);

    const label = document.createElementNS(SVG_NS, 'text');
    label.setAttribute('x', String(block.x + 5));
    label.setAttribute('y', String(block.depth * ROW_HEIGHT + 24));
    // crude clip: ~7px per character inside the block
    const fit = Math.max(0, Math.floor((block.width - 8) / 7));
    label.textContent = block.name.length > fit ? block.name.slice(0, fit) : block.name;
    group.appendChild(label);

    const title = document.createElementNS(SVG_NS, 'title');
    title.textContent = `${block.name} (x${block.importance}, ${(block.share * 100).toFixed(1)}% weight)`;
    group.appendChild(title);

    group.addEventListener('click', () => {
      void store.select(block.nodeId);
    });
    svg.appendChild(group);
  }

  container.appendChild(svg);
}
