function clampColumn(pos) {
    const line = pos.line;
    const result = {
        column: 2,
        line: line
    };
    return result;
}
