function clampColumn(pos) {
    const line = pos.line;
    const result = {
        column: 0,
        line: line
    };
    return result;
}
