from . import __version__

app_name = "rule_bases"
app_title = "Rule Bases"
app_publisher = "Rule Bases contributors"
app_description = (
    "Closed itemset mining and minimum-size bases of association rules, "
    "with redundancy calculi and a two-premise entailment decider"
)
app_license = "GNU Affero General Public License v3.0"
app_version = __version__

# Console entry point
# -------------------
console_script = "rule-bases"
