"""Surface language: syntax tree, parser, printer and module loader."""
