function checkName(node) {
    const name = node.callee.name;
    if (!name) {
        return false;
    }
    if (name === "Math" || name === "JSON") {
        report(node, "'{{name}}' is not a function.", { name });
        return true;
    }
    return false;
}
module.exports = checkName;
