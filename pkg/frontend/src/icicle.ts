// Icicle geometry for the tree overview. Pure: document in, block
// rectangles out, so proportionality is checkable without a DOM.

import { childrenOf, getNode, weightShares } from './tree.js';
import type { DocumentDto } from './types.js';

export interface IcicleBlock {
  nodeId: number;
  name: string;
  importance: number;
  depth: number;
  x: number;
  width: number;
  share: number;
}

export interface IcicleLayout {
  blocks: IcicleBlock[];
  depth: number;
}

/**
 * Lay the tree out in depth rows, root on top spanning the full
 * width. Each child's horizontal extent is its importance fraction
 * of the parent's extent, so a block's width over the total width
 * equals its effective weight share. A single-node tree is one
 * full-width block.
 */
export function icicleLayout(doc: DocumentDto, width: number): IcicleLayout {
  const shares = weightShares(doc);
  const blocks: IcicleBlock[] = [];
  let maxDepth = 0;

  const place = (nodeId: number, x: number, extent: number, depth: number) => {
    const node = getNode(doc, nodeId);
    blocks.push({
      nodeId,
      name: node.name,
      importance: node.importance,
      depth,
      x,
      width: extent,
      share: shares.get(nodeId) ?? 0,
    });
    maxDepth = Math.max(maxDepth, depth);
    const kids = childrenOf(doc, nodeId);
    if (kids.length === 0) return;
    let total = 0;
    for (const kid of kids) total += getNode(doc, kid).importance;
    let at = x;
    for (const kid of kids) {
      const slice = extent * (getNode(doc, kid).importance / total);
      place(kid, at, slice, depth + 1);
      at += slice;
    }
  };

  place(doc.tree.root_id, 0, width, 0);
  return { blocks, depth: maxDepth };
}

export function blockAt(layout: IcicleLayout, nodeId: number): IcicleBlock | undefined {
  return layout.blocks.find((b) => b.nodeId === nodeId);
}
