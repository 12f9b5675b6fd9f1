// Sankey geometry for the node editor: the selected node is a block
// on the left, its children are ribbons fanning out to blocks on the
// right, ribbon heights split the flow by importance multiplier.

import { childrenOf, getNode } from './tree.js';
import type { DocumentDto } from './types.js';

export interface SankeyRibbon {
  nodeId: number;
  name: string;
  importance: number;
  // vertical extent on the parent's right edge
  sourceTop: number;
  // vertical extent of the child block on the right
  targetTop: number;
  height: number;
}

export interface SankeyLayout {
  nodeId: number;
  name: string;
  parentTop: number;
  parentHeight: number;
  ribbons: SankeyRibbon[];
}

/**
 * Split `height` between the children of `nodeId` in proportion to
 * their importance multipliers; `gap` pixels separate the child
 * blocks on the right, the parent edge is packed without gaps so the
 * flow reads as one stream. A childless node yields no ribbons.
 */
export function sankeyLayout(
  doc: DocumentDto,
  nodeId: number,
  height: number,
  gap = 8,
): SankeyLayout {
  const node = getNode(doc, nodeId);
  const kids = childrenOf(doc, nodeId);
  if (kids.length === 0) {
    return { nodeId, name: node.name, parentTop: 0, parentHeight: height, ribbons: [] };
  }

  let total = 0;
  for (const kid of kids) total += getNode(doc, kid).importance;
  const usable = height - gap * (kids.length - 1);

  const ribbons: SankeyRibbon[] = [];
  let sourceAt = 0;
  let targetAt = 0;
  for (const kid of kids) {
    const child = getNode(doc, kid);
    const h = usable * (child.importance / total);
    ribbons.push({
      nodeId: kid,
      name: child.name,
      importance: child.importance,
      sourceTop: sourceAt,
      targetTop: targetAt,
      height: h,
    });
    sourceAt += h;
    targetAt += h + gap;
  }

  // parent block spans exactly the packed ribbon heights
  return { nodeId, name: node.name, parentTop: 0, parentHeight: sourceAt, ribbons };
}
