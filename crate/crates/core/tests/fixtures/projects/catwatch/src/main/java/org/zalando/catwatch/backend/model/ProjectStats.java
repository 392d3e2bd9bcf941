package org.zalando.catwatch.backend.model;

import java.util.Date;

public class ProjectStats {

    private long projectId;
    private String name;
    private String organizationName;
    private Date snapshotDate;
    private int starsCount;
    private int forksCount;
    private int commitsCount;
    private int contributorsCount;
    private int score;

    public long getProjectId() { return projectId; }
    public String getName() { return name; }
    public String getOrganizationName() { return organizationName; }
    public Date getSnapshotDate() { return snapshotDate; }
    public int getStarsCount() { return starsCount; }
    public int getForksCount() { return forksCount; }
    public int getCommitsCount() { return commitsCount; }
    public int getContributorsCount() { return contributorsCount; }
    public int getScore() { return score; }
}
